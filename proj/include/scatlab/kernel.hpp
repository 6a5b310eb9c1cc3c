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

/** \file kernel.hpp
 *
 *  The l-independent transformation kernel K(r, rho) with
 *  \f[ \varphi_\ell(r) = u_\ell(r) + \int_0^r K(r,\rho)\, u_\ell(\rho)\, \rho^{-2}\, d\rho, \f]
 *  obtained from the Volterra equation
 *  \f[ L(\xi,\eta) = b(\xi) - \int_{-\infty}^{\xi} ds \int_0^{\eta} dt\, Q(s,t) L(s,t) \f]
 *  in the coordinates xi = ln r + ln rho, eta = ln r - ln rho, with
 *  K = exp(xi/2) L.
 *
 *  The equation is discretised on a uniform grid with equal steps in xi and
 *  eta using the product trapezoidal rule and solved by forward marching.
 *  Only nodes with xi + eta <= 2 ln a (plus a few guard diagonals) are
 *  computed; the rest of the rectangle holds NaN.
 */

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "scatlab/potential.hpp"

namespace scatlab {

/// Boundary data and coefficients of the Volterra equation for one potential.
class GoursatData {
 public:
  explicit GoursatData(Potential q);

  const Potential& potential() const noexcept { return q_; }
  /// (r/2) times the integral of s q(s) over [0, r].
  double g(double r) const;
  /// Half the integral of s q(s) over [0, exp(xi/2)].
  double b(double xi) const;
  /// (1/4)[e^{xi+eta}(1 - q(e^{(xi+eta)/2})) - e^{xi-eta}].
  double Q(double xi, double eta) const;
  /// (1/2) e^s (1 + |q(e^{s/2})|).
  double mu(double s) const;
  /// Integral of mu over (-inf, xi], in the closed form
  /// e^xi / 2 + integral of s |q(s)| over [0, e^{xi/2}].
  double mu1(double xi) const;

 private:
  Potential q_;
};

struct KernelOptions {
  double eta_max = 12.0;
  int n_eta = 800;
  /// Extra xi range below 2 ln a - eta_max.
  double xi_pad = 5.0;
  /// Number of xi steps; 0 selects it from eta_max and xi_pad.
  int n_xi = 0;
  /// Guard diagonals beyond xi + eta = 2 ln a.
  int margin = 6;
  /// Also solve with halved steps and keep the finer grid.
  bool refine = true;
  /// Throw ConvergenceError when the refinement change exceeds convergence_tol.
  bool require_convergence = false;
  double convergence_tol = 1e-8;
  /// Allowed max |L(xi_min, eta)| relative to max |L|.
  double truncation_tol = 1e-6;
};

struct RefinementInfo {
  bool performed = false;
  /// | max|L_h| - max|L_{h/2}| |.
  double sup_change = 0.0;
  /// Largest pointwise change on the common nodes.
  double max_pointwise_change = 0.0;
  bool converged = false;
};

class KernelGrid {
 public:
  KernelGrid(GoursatData gd, double xi_min, double h, int n_xi, int n_eta);

  const GoursatData& goursat() const noexcept { return gd_; }
  const Potential& potential() const noexcept { return gd_.potential(); }

  double xi_min() const noexcept { return xi_min_; }
  double xi_max() const noexcept { return xi_min_ + n_xi_ * h_; }
  double eta_max() const noexcept { return n_eta_ * h_; }
  double step() const noexcept { return h_; }
  int n_xi() const noexcept { return n_xi_; }
  int n_eta() const noexcept { return n_eta_; }
  double xi(int i) const noexcept { return xi_min_ + i * h_; }
  double eta(int j) const noexcept { return j * h_; }
  /// Node belongs to the computed region xi + eta <= xi_max.
  bool valid(int i, int j) const noexcept {
    return i >= 0 && j >= 0 && i <= n_xi_ && j <= n_eta_ && i + j <= n_xi_;
  }
  double L(int i, int j) const { return values_[idx(i, j)]; }
  double& L(int i, int j) { return values_[idx(i, j)]; }

  /// Weight exponent gamma = 2c of the sup-norm sup e^{-gamma eta}|L|.
  double gamma = 0.0;
  /// The constant c bounding the Volterra operator norm by c / gamma.
  double contraction_c = 0.0;
  /// Effective potential per diagonal k = i + j, with jump corrections.
  std::vector<double> q_diag;
  /// Contribution of xi < xi_min to the double integral, per eta node.
  std::vector<double> tail;
  RefinementInfo refinement;
  /// max over eta of |L(xi_min, eta)|.
  double edge_max = 0.0;
  double sup_abs() const;

  /// Columns xi, eta, L for computed nodes, every `stride`-th node in each direction.
  std::string to_csv(int stride = 1) const;

 private:
  std::size_t idx(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * (n_eta_ + 1) + j;
  }

  GoursatData gd_;
  double xi_min_;
  double h_;
  int n_xi_;
  int n_eta_;
  std::vector<double> values_;
};

/// Forward-marching solution; throws ConvergenceError on a truncation
/// violation or, when requested, on failed refinement convergence.
KernelGrid solve_kernel(const Potential& q, const KernelOptions& opts = {});

/// The same discrete equation solved by Picard iteration (cross-check mode).
KernelGrid solve_kernel_picard(const Potential& q, const KernelOptions& opts, int max_iter = 500,
                               double tol = 1e-14);

/// L at an arbitrary point from the grid: the boundary data b(xi) is added
/// exactly and the remainder L - b is interpolated by tensor cubics.
double kernel_L(const KernelGrid& kg, double xi, double eta);

struct KernelValue {
  double value = 0.0;
  /// Set when eta exceeds the grid; then value is 0 and tail_bound bounds |K|.
  bool truncated = false;
  double tail_bound = 0.0;
};

KernelValue kernel_K_detailed(const KernelGrid& kg, double r, double rho);
/// K(r, rho) = exp(xi/2) L(xi, eta) for 0 < rho <= r <= a.
double kernel_K(const KernelGrid& kg, double r, double rho);

/// u_l(r) plus the integral of K(r, rho) u_l(rho) rho^{-2} over (0, r].
double apply_transform(const KernelGrid& kg, int ell, double r);

/// (2/r) d/dr [K(r, r)/r] by finite differences along the diagonal.
double recover_potential(const KernelGrid& kg, double r);

struct WeightedNorm {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Integral of |K(r, rho)| / rho over (0, r], plus a majorant bound for eta > eta_max.
WeightedNorm weighted_l1_norm(const KernelGrid& kg, double r);

// ---- verification of the analytic estimates -------------------------------

/// 1 + sum over n <= n_terms of z^n / (n!)^2 with z = eta mu1(xi + eta).
double picard_majorant(const GoursatData& gd, double xi, double eta, int n_terms);

struct MajorantCheck {
  double c = 0.0;          ///< sup |b| over the boundary row
  double worst_ratio = 0.0;  ///< max |L| / (c exp(2.1 (eta mu1)^0.6))
  bool holds = false;
};

/// |L(xi, eta)| <= c exp(2.1 [eta mu1(xi + eta)]^0.6) at every computed node.
MajorantCheck majorant_check(const KernelGrid& kg);

struct IteratedBoundCheck {
  /// worst_ratio[n-1] = max W^n 1 / (eta^n mu1^n / (n!)^2).
  std::vector<double> worst_ratio;
  bool holds = false;
};

/// W^n 1 for n = 1..n_max by nested trapezoidal quadrature on a coarse grid.
IteratedBoundCheck iterated_bound_check(const GoursatData& gd, int n_max = 3, double h = 0.02,
                                        double xi_span = 20.0, double eta_hi = 4.0);

struct ContractionEstimate {
  double gamma = 0.0;
  double bound = 0.0;          ///< c / gamma
  double max_ratio = 0.0;      ///< largest ||V L|| / ||L|| over the trials
  int trials = 0;
};

/// Applies V to random grid functions e^{gamma t} eps(s, t), |eps| <= 1, and
/// measures the gamma-weighted sup-norm ratio.
ContractionEstimate contraction_estimate(const KernelGrid& kg, int trials = 20,
                                         unsigned long long seed = 20240601ULL, double h = 0.05,
                                         double xi_span = 30.0);

struct FixedPointResidual {
  double weighted = 0.0;    ///< relative, in the gamma-weighted sup-norm
  double unweighted = 0.0;  ///< max |residual| / max |L|
};

/// Residual of the solved grid in the discrete Volterra equation, with the
/// double integral re-evaluated by direct prefix summation.
FixedPointResidual fixed_point_residual(const KernelGrid& kg);

struct CompletenessVerdict {
  std::vector<std::complex<double>> projections;  ///< onto P_0..P_12
  double max_abs = 0.0;
  bool consistent_with_zero = false;
};

/// Projects M(t) = int_0^r rho f(rho) e^{i rho t} d rho + r A e^{i r t} onto
/// P_0..P_12 over t in [-1, 1].
CompletenessVerdict legendre_completeness_check(const std::function<double(double)>& f,
                                                double A, double r, double tol = 1e-10);

struct OrderTypeEstimate {
  double raw_order = 0.0;   ///< n ln n / ln(1/|c_n|) at n_max
  double order = 0.0;       ///< limit from a fit in 1/ln n and 1/n
  double raw_type = 0.0;    ///< n |c_n|^{rho/n} / (e rho) at n_max with the fitted order
  double type = 0.0;
};

/// Order and type of an entire function from log|c_n|, n = 1..n_max.
OrderTypeEstimate estimate_order_type(const std::function<double(int)>& log_abs_coeff, int n_max);
/// The case c_n = 1/(n!)^2.
OrderTypeEstimate majorant_order_type(int n_max);

}  // namespace scatlab
