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

/** \file radial.hpp
 *
 *  Regular solution of the radial equation at k = 1,
 *  \f[ \varphi'' + \varphi - \ell(\ell+1)\varphi/r^2 - q\varphi = 0, \qquad
 *      \varphi \sim r^{\ell+1}/(2\ell+1)!! \ (r \to 0), \f]
 *  phase shifts by matching to the free basis at r = a, amplitude
 *  coefficients and the truncated partial-wave amplitude.
 *
 *  Internally the solver integrates w = exp(-S) phi with
 *  S(r) = (l+1) ln r - ln (2l+1)!!, which satisfies
 *  w'' + 2(l+1) w'/r = (q - 1) w and stays of order one for large l.
 */

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "scatlab/potential.hpp"
#include "scatlab/specfun.hpp"

namespace scatlab {

struct RadialOptions {
  double rtol = 1e-10;
  double atol = 1e-14;
  int grid_points = 400;
  /// Initial value of the scaled solution; results are divided by it again.
  double scale = 1.0;
  /// Additional radii where the solution is sampled.
  std::vector<double> extra_radii;
  /// Integrate up to max(a, r_end); the potential vanishes beyond a.
  double r_end = 0.0;
};

struct RadialSolution {
  int ell = 0;
  double start_radius = 0.0;
  std::vector<double> grid;
  std::vector<double> phi;        ///< may underflow to 0 for large l
  std::vector<double> phi_prime;
  std::vector<double> w;          ///< phi = exp(S(r)) w
  std::vector<double> w_prime;
  double delta = 0.0;             ///< in [-pi, pi)
  double jost_magnitude = 1.0;
  double log_jost_magnitude = 0.0;

  /// S(r) = (l+1) ln r - ln (2l+1)!!.
  double log_scale(double r) const;
  /// phi at grid index i as a scaled value pair.
  specfun::ScaledPair scaled_phi(std::size_t i) const;
};

struct PhaseShift {
  double delta = 0.0;
  double jost_magnitude = 1.0;
  double log_jost_magnitude = 0.0;
};

/// Throws DomainError for l < 0 or l > 1000, ConvergenceError when the
/// integrator cannot proceed.
RadialSolution regular_solution(const Potential& q, int ell, const RadialOptions& opts = {});

PhaseShift phase_shift(const Potential& q, int ell, const RadialOptions& opts = {});

/// Decompose phi = |F| (cos d u_l - sin d v_l) at radius r from the scaled
/// value and derivative of phi there.
PhaseShift match_free_basis(int ell, double r, const specfun::ScaledPair& phi);

/// Map an angle into [-pi, pi).
double reduce_phase(double delta);

/// 4 pi exp(i d) sin d.
std::complex<double> amplitude_coefficient(double delta);
/// 2 pi i (1 - exp(2 i d)); algebraically equal to amplitude_coefficient.
std::complex<double> amplitude_coefficient_exponential(double delta);

class PhaseShiftTable {
 public:
  struct Entry {
    int ell = 0;
    double delta = 0.0;
    double jost_magnitude = 1.0;
  };

  PhaseShiftTable() = default;
  explicit PhaseShiftTable(std::string potential_id) : potential_id_(std::move(potential_id)) {}

  /// Inserts keeping entries sorted; throws ValidationError on a duplicate l.
  void add(const Entry& e);

  const std::string& potential_id() const noexcept { return potential_id_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  /// Throws DomainError when l is missing.
  const Entry& at(int ell) const;
  bool covers(int l_max) const;

  /// Columns ell, delta, jost_magnitude.
  std::string to_csv() const;

 private:
  std::string potential_id_;
  std::vector<Entry> entries_;
};

/// Phase shifts for l = 0..l_max computed on up to `threads` workers.
PhaseShiftTable phase_shift_table(const Potential& q, int l_max, const RadialOptions& opts = {},
                                  int threads = 1);

struct AmplitudeResult {
  std::complex<double> value;
  /// (2L+1)|sin d_L| for the last included term, a proxy for the neglected tail.
  double tail_estimate = 0.0;
};

/// Sum over l <= l_max of A_l (2l+1)/(4 pi) P_l(cos theta).
AmplitudeResult partial_wave_amplitude(const PhaseShiftTable& table, double cos_theta, int l_max);

/// Integral of weight(r) phi_1(r) phi_2(r) over [0, R], R the largest support,
/// with phi_j the regular solutions for q1 and q2. The Wronskian term
/// phi_1'(R) phi_2(R) - phi_1(R) phi_2'(R) is returned alongside.
struct OverlapIntegral {
  double value = 0.0;
  double boundary_term = 0.0;
  /// value = scaled_value * exp(log_scale), same for the boundary term.
  double scaled_value = 0.0;
  double scaled_boundary = 0.0;
  double log_scale = 0.0;
  double radius = 0.0;
};

OverlapIntegral overlap_integral(const Potential& q1, const Potential& q2, const Potential& weight,
                                 int ell, const RadialOptions& opts = {});

}  // namespace scatlab
