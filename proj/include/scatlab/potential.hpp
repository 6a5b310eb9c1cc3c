// Copyright 2026 The scatlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/** \file potential.hpp
 *
 *  Compactly supported radial potentials q(r), q = 0 for r > a, and the
 *  difference p = q1 - q2 of two of them.
 *
 *  Every potential is held internally as consecutive linear segments
 *  q(r) = alpha + beta r on (lo, hi] covering [0, a]. Evaluation at a
 *  breakpoint returns the left limit.
 */

#pragma once

#include <string>
#include <vector>

namespace scatlab {

enum class PotentialKind { zero, piecewise, table, difference };

/// One constant piece [lo, hi] with value `value`.
struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
};

/// One table sample (r, q(r)).
struct Sample {
  double r = 0.0;
  double q = 0.0;
};

/// q(r) = alpha + beta r on (lo, hi].
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  double at(double r) const { return alpha + beta * r; }
};

class Potential {
 public:
  /// q = 0 with nominal support radius a.
  static Potential zero(double a);
  /// Piecewise-constant; gaps between pieces are zero. Throws ValidationError.
  static Potential piecewise(double a, std::vector<Piece> pieces);
  /// Piecewise-linear interpolation of samples, constant outside the sampled
  /// range and zero beyond a. Throws ValidationError.
  static Potential table(double a, std::vector<Sample> samples);

  PotentialKind kind() const noexcept { return kind_; }
  double support() const noexcept { return a_; }
  const std::string& id() const noexcept { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }

  /// q(r); zero beyond a. Throws DomainError for r < 0.
  double operator()(double r) const;
  double evaluate(double r) const { return (*this)(r); }

  /// Interior segment boundaries in (0, a), plus a itself.
  std::vector<double> breakpoints() const;
  /// Points in (0, a] where q is discontinuous (including a when q(a-) != 0).
  std::vector<double> jumps() const;

  bool is_zero() const noexcept;

  /// Closed form of the integral of r q(r) over [0, R].
  double cumulative_moment(double R) const;
  /// Closed form of the integral of r |q(r)| over [0, R].
  double cumulative_abs_moment(double R) const;
  /// Integral of r |q(r)| over [0, a] by adaptive quadrature split at breakpoints.
  double first_moment() const;

  /// c q with the same support and representation.
  Potential scaled(double c) const;

  /// Segments merged from two potentials; used for differences.
  static Potential from_segments(double a, std::vector<Segment> segments, PotentialKind kind);

 private:
  Potential() = default;
  void finalize_segments(std::vector<Segment> raw);

  PotentialKind kind_ = PotentialKind::zero;
  double a_ = 1.0;
  std::string id_;
  std::vector<Piece> pieces_;
  std::vector<Sample> samples_;
  std::vector<Segment> segments_;
};

/// p = q1 - q2 on [0, max(a1, a2)].
class DifferencePotential {
 public:
  DifferencePotential(Potential q1, Potential q2);

  const Potential& q1() const noexcept { return q1_; }
  const Potential& q2() const noexcept { return q2_; }
  const Potential& p() const noexcept { return p_; }
  double support() const noexcept { return p_.support(); }
  double operator()(double r) const { return p_(r); }
  bool is_zero() const noexcept { return p_.is_zero(); }

 private:
  Potential q1_;
  Potential q2_;
  Potential p_;
};

/// Parse a JSON document; throws ParseError or ValidationError.
Potential load_potential(const std::string& text);
/// Read and parse a JSON file; throws IoError when it cannot be read.
Potential load_potential_file(const std::string& path);
/// JSON text that load_potential maps back to an equal potential.
std::string serialize_potential(const Potential& q);

bool operator==(const Potential& x, const Potential& y);

}  // namespace scatlab
