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

/** \file analysis.hpp
 *
 *  Orthogonality functionals of a potential difference p = q1 - q2:
 *  \f[ h(\ell) = \int_0^a p\,\varphi_{1\ell}\varphi_{2\ell}\,dr, \qquad
 *      h_0(\ell) = \int_0^a p\,u_\ell^2\,dr, \f]
 *  and the entire form
 *  \f[ H(\ell) = \int_0^a p(r)\, r^{2\ell+2} \Big(\int_{-1}^{1}(1-t^2)^\ell e^{irt}dt\Big)^2 dr
 *             = C(\ell)^2 h_0(\ell), \qquad C(\ell) = 2^{\ell+1}\Gamma(\ell+1), \f]
 *  which is holomorphic for Re l > 0. Also: Nevanlinna-class checks, Muntz
 *  index sets, the large-l moment heuristic and discrimination experiments.
 */

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "scatlab/potential.hpp"
#include "scatlab/radial.hpp"
#include "scatlab/specfun.hpp"

namespace scatlab {

using cplx = std::complex<double>;

/// ln C(l) with C(l) = 2^{l+1} Gamma(l+1), principal branch.
cplx log_gamma_factor(cplx ell);

/// The integral of (1-t^2)^l e^{irt} over [-1, 1] by Gauss-Legendre after
/// t = 1 - s^4; `error` receives the difference to a lower-order rule.
cplx bessel_representation(cplx ell, double r, double* error = nullptr);

struct OrthogonalityValue {
  int ell = 0;
  double value = 0.0;
  /// Change under a re-solve with tighter tolerances.
  double error = 0.0;
  /// phi_1'(a) phi_2(a) - phi_1(a) phi_2'(a).
  double boundary = 0.0;
  /// value = scaled_value exp(log_scale), same for the boundary term.
  double scaled_value = 0.0;
  double scaled_boundary = 0.0;
  double log_scale = 0.0;
};

/// h(l) for the pair held by p.
OrthogonalityValue h_ell(const DifferencePotential& p, int ell, const RadialOptions& opts = {});

struct ComplexValue {
  cplx value;
  double error = 0.0;
};

/// h0(l) from Riccati-Bessel functions (integer l >= 0).
ComplexValue h0_ell(const DifferencePotential& p, int ell);
/// h0(l) through the integral representation of u_l; Re l > 0 or integer.
ComplexValue h0_ell(const DifferencePotential& p, const AngularIndex& ell);
/// H(l) directly from its double-integral form.
ComplexValue H_ell(const DifferencePotential& p, const AngularIndex& ell);

/// ln h0(l) with h0 = mantissa exp(log_scale) for large integer l.
struct ScaledReal {
  double mantissa = 0.0;
  double log_scale = 0.0;
};
ScaledReal h0_ell_scaled(const DifferencePotential& p, int ell);

struct FunctionalSample {
  cplx ell;
  cplx h0;
  cplx H;
  /// h and h1 = C(l)^2 h exist only at integer l.
  bool has_h = false;
  cplx h;
  cplx h1;
  double quadrature_error = 0.0;
};

FunctionalSample functional_sample(const DifferencePotential& p, const AngularIndex& ell,
                                   const RadialOptions& opts = {});

/// Columns ell_re, ell_im, h0_re, h0_im, H_re, H_im, quadrature_error.
std::string functional_scan_csv(const std::vector<FunctionalSample>& samples,
                                const std::string& potential_id);

std::vector<FunctionalSample> functional_scan(const DifferencePotential& p,
                                              const std::vector<AngularIndex>& ells,
                                              int threads = 1);

// ---- growth and Nevanlinna class ------------------------------------------

struct GrowthSample {
  cplx ell;
  double abs_H = 0.0;
  /// 4 a (int r|p|) a^{2 sigma}: |int (1-t^2)^l e^{irt} dt| <= 2 gives the factor 4.
  double bound = 0.0;
  /// (int r|p|) a^{2 sigma + 1}, the form without that factor.
  double bound_literal = 0.0;
};

struct GrowthCheck {
  std::vector<GrowthSample> samples;
  bool holds = false;
  bool literal_holds = false;
};

/// |H(sigma + i tau)| on an n_sigma x n_tau grid of [s_lo, s_hi] x [t_lo, t_hi].
GrowthCheck growth_check(const DifferencePotential& p, int n_sigma = 10, int n_tau = 5,
                         double s_lo = 0.5, double s_hi = 5.0, double t_lo = -5.0,
                         double t_hi = 5.0, int threads = 1);

/// c = 4 a int r|p| dr, the constant with |H(l)| <= c a^{2 Re l}.
double growth_constant(const DifferencePotential& p);

struct NevanlinnaResult {
  double r_disc = 0.0;
  double value = 0.0;
  /// 2 pi ln+ c + 4 pi ln max(a, 1).
  double bound = 0.0;
  int points = 0;
};

/// Integral of ln+ |H((1 - r e^{i phi}) / (1 + r e^{i phi}))| over phi in [-pi, pi].
NevanlinnaResult nevanlinna_integral(const DifferencePotential& p, double r_disc,
                                     int n_phi = 256, int threads = 1);

/// Trapezoidal value of the integral of 1 / (1 + r^2 + 2 r cos phi) over [-pi, pi].
double poisson_integral(double r, int n_phi = 1024);

struct ContourCheck {
  double modulus = 0.0;  ///< |closed integral of H dl|
  double max_abs = 0.0;  ///< max |H| on the circle
};

ContourCheck cauchy_contour_check(const DifferencePotential& p, cplx center = {2.0, 0.0},
                                  double radius = 0.25, int n = 64, int threads = 1);

// ---- Muntz index sets -------------------------------------------------------

enum class MuntzClass { divergent, convergent, unknown };
std::string to_string(MuntzClass c);

class IndexSet {
 public:
  enum class Family { arithmetic, primes, geometric, list };

  /// "arithmetic:c:d", "primes", "geometric:b" or "list:l1,l2,...";
  /// throws ParseError or ValidationError.
  static IndexSet parse(const std::string& text);

  static IndexSet arithmetic(int c, int d);
  static IndexSet primes();
  static IndexSet geometric(int base);
  static IndexSet list(std::vector<int> values);

  Family family() const noexcept { return family_; }
  /// Members in [0, l_max], ascending.
  std::vector<int> members(int l_max) const;
  bool contains(int ell) const;
  std::string descriptor() const;

 private:
  IndexSet(Family f, int c, int d, std::vector<int> values)
      : family_(f), c_(c), d_(d), values_(std::move(values)) {}

  Family family_;
  int c_ = 0;
  int d_ = 1;
  std::vector<int> values_;
};

MuntzClass muntz_classify(const IndexSet& s);

/// Sum of 1/l over the positive members up to l_max.
double muntz_partial_sum(const IndexSet& s, int l_max);

// ---- large-l heuristic ------------------------------------------------------

enum class HeuristicPath {
  free,     ///< h0 with phi replaced by u_l
  regular,  ///< h with the regular solutions of q1 and q2
};

struct MomentHeuristic {
  int ell = 0;
  /// ln |functional| and its sign.
  double log_abs_h = 0.0;
  int sign_h = 0;
  /// ln |P^2 int r^2 p r^{2l} dr| with P^2 = (1/2)(e/(2l+1))^{2l+1}/(2l+1).
  double log_abs_moment = 0.0;
  int sign_moment = 0;
  /// functional / scaled moment; 1 by convention when both vanish.
  double ratio = 1.0;
  bool degenerate = false;
};

/// Throws DomainError for l < 20.
MomentHeuristic moment_heuristic(const DifferencePotential& p, int ell,
                                 HeuristicPath path = HeuristicPath::free);

// ---- discrimination -----------------------------------------------------------

struct DiscriminationRow {
  int ell = 0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double h = 0.0;
  /// |F1||F2| sin(d2 - d1), the boundary term reconstructed from phase data.
  double h_from_phases = 0.0;
};

struct DiscriminationReport {
  std::string index_set;
  int l_max = 0;
  std::vector<DiscriminationRow> rows;
  double sup_delta = 0.0;
  double sup_h = 0.0;
  /// Pearson correlation of |d1 - d2| and |h| over the rows (0 if undefined).
  double correlation = 0.0;
  /// max |h - h_from_phases| / max(|h|, tiny).
  double boundary_mismatch = 0.0;

  /// Columns ell, delta1, delta2, h.
  std::string to_csv() const;
};

/// Throws DomainError for l_max > 100.
DiscriminationReport discrimination_experiment(const Potential& q1, const Potential& q2,
                                               const IndexSet& s, int l_max, int threads = 1);

}  // namespace scatlab
