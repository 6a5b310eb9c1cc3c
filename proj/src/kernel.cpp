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

#include "scatlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kernel_detail.hpp"
#include "scatlab/csv.hpp"
#include "scatlab/error.hpp"
#include "scatlab/quadrature.hpp"
#include "scatlab/specfun.hpp"

namespace scatlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Segment segment_ending_at(const Potential& q, double x) {
  for (const Segment& s : q.segments())
    if (s.hi == x) return s;
  return {};
}

Segment segment_starting_at(const Potential& q, double x) {
  if (x >= q.support()) return {};
  for (const Segment& s : q.segments())
    if (s.lo == x) return s;
  return {};
}

// q along the diagonals s + t = sigma_k. A jump between two diagonals is
// absorbed into the two nearest values so that the trapezoidal sum integrates
// the step exactly.
std::vector<double> diagonal_potential(const Potential& q, double sigma0, double h, int n_diag) {
  std::vector<double> qd(n_diag + 1);
  std::vector<double> rk(n_diag + 1);
  for (int k = 0; k <= n_diag; ++k) {
    rk[k] = std::exp(0.5 * (sigma0 + k * h));
    qd[k] = q(rk[k]);
  }
  for (double x : q.jumps()) {
    const double t = (2.0 * std::log(x) - sigma0) / h;
    const int k = static_cast<int>(std::floor(t));
    const double theta = t - k;
    if (k < 0 || k + 1 > n_diag) continue;
    const Segment in = segment_ending_at(q, x);
    const Segment out = segment_starting_at(q, x);
    if (theta <= 0.5) {
      qd[k] = (0.5 + theta) * in.at(rk[k]) + (0.5 - theta) * out.at(rk[k]);
      qd[k + 1] = out.at(rk[k + 1]);
    } else {
      qd[k] = in.at(rk[k]);
      qd[k + 1] = (theta - 0.5) * in.at(rk[k + 1]) + (1.5 - theta) * out.at(rk[k + 1]);
    }
  }
  return qd;
}

// Integral over s < xi_min, with L replaced by its small-r form q(0) e^s / 4.
std::vector<double> left_tail(const Potential& q, double xi0, double h, int n_eta) {
  const double q0 = q.segments().front().alpha;
  std::vector<double> tail(n_eta + 1);
  const double pref = q0 * std::exp(2.0 * xi0) / 32.0;
  for (int j = 0; j <= n_eta; ++j) {
    const double eta = j * h;
    tail[j] = pref * ((1.0 - q0) * std::expm1(eta) + std::expm1(-eta));
  }
  return tail;
}

KernelGrid make_grid(const Potential& q, double h, int m, int n_eta, int margin) {
  const int n_xi = m + margin;
  const double xi0 = 2.0 * std::log(q.support()) - m * h;
  KernelGrid kg(GoursatData(q), xi0, h, n_xi, n_eta);
  kg.q_diag = diagonal_potential(q, xi0, h, n_xi);
  kg.tail = left_tail(q, xi0, h, n_eta);
  kg.contraction_c = 2.0 * std::exp(kg.xi_max() + kg.eta_max()) + 2.0 * q.first_moment();
  kg.gamma = 2.0 * kg.contraction_c;
  return kg;
}

double edge_max(const KernelGrid& kg) {
  double edge = 0.0;
  for (int j = 0; j <= std::min(kg.n_eta(), kg.n_xi()); ++j) edge = std::max(edge, std::abs(kg.L(0, j)));
  return edge;
}

KernelGrid march(const Potential& q, double h, int m, int n_eta, int margin) {
  KernelGrid kg = make_grid(q, h, m, n_eta, margin);
  const int n_xi = kg.n_xi();
  const detail::NodeCoefficients Q(kg);
  std::vector<double> b(n_xi + 1);
  for (int i = 0; i <= n_xi; ++i) b[i] = kg.goursat().b(kg.xi(i));

  const double c = 0.25 * h * h;
  std::vector<double> f_prev(n_eta + 1), f_cur(n_eta + 1);
  for (int j = 0; j <= std::min(n_eta, n_xi); ++j) {
    kg.L(0, j) = b[0] - kg.tail[j];
    f_prev[j] = Q(0, j) * kg.L(0, j);
  }
  for (int i = 1; i <= n_xi; ++i) {
    const int jmax = std::min(n_eta, n_xi - i);
    kg.L(i, 0) = b[i];
    f_cur[0] = Q(i, 0) * b[i];
    for (int j = 1; j <= jmax; ++j) {
      const double qij = Q(i, j);
      const double num = kg.L(i - 1, j) + kg.L(i, j - 1) - kg.L(i - 1, j - 1) -
                         c * (f_prev[j] + f_cur[j - 1] + f_prev[j - 1]);
      const double v = num / (1.0 + c * qij);
      kg.L(i, j) = v;
      f_cur[j] = qij * v;
    }
    std::swap(f_prev, f_cur);
  }
  kg.edge_max = edge_max(kg);
  return kg;
}

int xi_steps(const KernelOptions& opts) {
  if (!(opts.eta_max > 0.0)) throw DomainError("eta_max must be positive");
  if (opts.n_eta < 8) throw DomainError("n_eta must be at least 8");
  if (opts.margin < 4) throw DomainError("margin must be at least 4 diagonals");
  if (opts.xi_pad < 0.0) throw DomainError("xi_pad must be >= 0");
  const double h = opts.eta_max / opts.n_eta;
  const int m = opts.n_xi > 0 ? opts.n_xi - opts.margin
                              : static_cast<int>(std::ceil((opts.eta_max + opts.xi_pad) / h - 1e-9));
  if (m < opts.n_eta)
    throw DomainError(fmt::format("xi grid of {} steps cannot cover eta_max (needs {})",
                                  opts.n_xi, opts.n_eta + opts.margin));
  return m;
}

void check_truncation(const KernelGrid& kg, const KernelOptions& opts) {
  const double sup = kg.sup_abs();
  if (kg.edge_max > opts.truncation_tol * sup)
    throw ConvergenceError(
        fmt::format("|L| at xi_min is {:.3e}, above the truncation tolerance {:.1e} x {:.3e}",
                    kg.edge_max, opts.truncation_tol, sup),
        kg.edge_max);
}

std::array<double, 4> lagrange4(double x) {
  return {-(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0, x * (x - 2.0) * (x - 3.0) / 2.0,
          -x * (x - 1.0) * (x - 3.0) / 2.0, x * (x - 1.0) * (x - 2.0) / 6.0};
}

// Breakpoints of the interpolant along xi + eta = x: eta nodes and the
// crossings of xi nodes.
std::vector<double> path_breaks(const KernelGrid& kg, double x, double eta_end) {
  const double h = kg.step();
  std::vector<double> br;
  const double off = std::fmod(x - kg.xi_min(), h);
  const double shift = off < 0.0 ? off + h : off;
  for (int j = 0; j * h < eta_end; ++j) {
    br.push_back(j * h);
    if (j * h + shift < eta_end) br.push_back(j * h + shift);
  }
  br.push_back(eta_end);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(), [h](double p, double q) { return q - p < 1e-12 * h; }),
           br.end());
  return br;
}

template <class F>
double integrate_path(const KernelGrid& kg, double x, double eta_end, F&& f) {
  const std::vector<double> br = path_breaks(kg, x, eta_end);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < br.size(); ++k) sum += quad::gl_integrate(f, br[k], br[k + 1], 4);
  return sum;
}

double majorant_exponent(double z) { return 2.1 * std::pow(std::max(z, 0.0), 0.6); }

}  // namespace

GoursatData::GoursatData(Potential q) : q_(std::move(q)) {}

double GoursatData::g(double r) const {
  if (!(r >= 0.0)) throw DomainError("g(r) needs r >= 0");
  return 0.5 * r * q_.cumulative_moment(r);
}

double GoursatData::b(double xi) const { return 0.5 * q_.cumulative_moment(std::exp(0.5 * xi)); }

double GoursatData::Q(double xi, double eta) const {
  const double e = std::exp(xi + eta);
  return 0.25 * (e - e * q_(std::exp(0.5 * (xi + eta))) - std::exp(xi - eta));
}

double GoursatData::mu(double s) const { return 0.5 * std::exp(s) * (1.0 + std::abs(q_(std::exp(0.5 * s)))); }

double GoursatData::mu1(double xi) const {
  return 0.5 * std::exp(xi) + q_.cumulative_abs_moment(std::exp(0.5 * xi));
}

KernelGrid::KernelGrid(GoursatData gd, double xi_min, double h, int n_xi, int n_eta)
    : gd_(std::move(gd)), xi_min_(xi_min), h_(h), n_xi_(n_xi), n_eta_(n_eta),
      values_(static_cast<std::size_t>(n_xi + 1) * (n_eta + 1), kNaN) {}

double KernelGrid::sup_abs() const {
  double m = 0.0;
  for (double v : values_)
    if (!std::isnan(v)) m = std::max(m, std::abs(v));
  return m;
}

std::string KernelGrid::to_csv(int stride) const {
  if (stride < 1) throw DomainError("CSV stride must be >= 1");
  CsvTable csv({"xi", "eta", "L"});
  csv.add_meta("potential", potential().id().empty() ? std::string("unnamed") : potential().id());
  csv.add_meta("xi_min", xi_min());
  csv.add_meta("xi_max", xi_max());
  csv.add_meta("eta_max", eta_max());
  csv.add_meta("step", step());
  csv.add_meta("gamma", gamma);
  csv.add_meta("stride", std::to_string(stride));
  for (int i = 0; i <= n_xi_; i += stride)
    for (int j = 0; j <= n_eta_ && i + j <= n_xi_; j += stride) csv.add_row({xi(i), eta(j), L(i, j)});
  return csv.str();
}

KernelGrid solve_kernel(const Potential& q, const KernelOptions& opts) {
  const int m = xi_steps(opts);
  const double h = opts.eta_max / opts.n_eta;
  KernelGrid coarse = march(q, h, m, opts.n_eta, opts.margin);
  KernelGrid result = coarse;
  if (opts.refine) {
    KernelGrid fine = march(q, 0.5 * h, 2 * m, 2 * opts.n_eta, opts.margin);
    double sup_c = 0.0, sup_f = 0.0, point = 0.0;
    for (int i = 0; i <= coarse.n_xi(); ++i)
      for (int j = 0; j <= coarse.n_eta(); ++j) {
        if (!coarse.valid(i, j) || !fine.valid(2 * i, 2 * j)) continue;
        const double lc = coarse.L(i, j);
        const double lf = fine.L(2 * i, 2 * j);
        sup_c = std::max(sup_c, std::abs(lc));
        sup_f = std::max(sup_f, std::abs(lf));
        point = std::max(point, std::abs(lc - lf));
      }
    fine.refinement.performed = true;
    fine.refinement.sup_change = std::abs(sup_c - sup_f);
    fine.refinement.max_pointwise_change = point;
    fine.refinement.converged = fine.refinement.sup_change < opts.convergence_tol;
    result = std::move(fine);
    if (opts.require_convergence && !result.refinement.converged)
      throw ConvergenceError(
          fmt::format("kernel grid refinement changed the sup-norm by {:.3e} (tolerance {:.1e})",
                      result.refinement.sup_change, opts.convergence_tol),
          result.refinement.sup_change);
  }
  check_truncation(result, opts);
  return result;
}

KernelGrid solve_kernel_picard(const Potential& q, const KernelOptions& opts, int max_iter,
                               double tol) {
  const int m = xi_steps(opts);
  KernelGrid kg = make_grid(q, opts.eta_max / opts.n_eta, m, opts.n_eta, opts.margin);
  std::vector<double> b(kg.n_xi() + 1);
  for (int i = 0; i <= kg.n_xi(); ++i) b[i] = kg.goursat().b(kg.xi(i));
  for (int i = 0; i <= kg.n_xi(); ++i)
    for (int j = 0; j <= kg.n_eta() && i + j <= kg.n_xi(); ++j) kg.L(i, j) = b[i];
  double change = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const std::vector<double> v = detail::volterra_term(kg);
    change = 0.0;
    double scale = 0.0;
    for (int i = 0; i <= kg.n_xi(); ++i)
      for (int j = 0; j <= kg.n_eta() && i + j <= kg.n_xi(); ++j) {
        const double next = b[i] - v[detail::flat(kg, i, j)];
        change = std::max(change, std::abs(next - kg.L(i, j)));
        scale = std::max(scale, std::abs(next));
        kg.L(i, j) = next;
      }
    if (change <= tol * std::max(scale, 1e-300)) {
      kg.edge_max = edge_max(kg);
      check_truncation(kg, opts);
      return kg;
    }
  }
  throw ConvergenceError(fmt::format("Picard iteration stalled after {} sweeps (last change {:.3e})",
                                     max_iter, change),
                         change);
}

namespace detail {

NodeCoefficients::NodeCoefficients(const KernelGrid& kg) : q_diag_(kg.q_diag) {
  exp_sig_.resize(kg.n_xi() + 1);
  exp_meta_.resize(kg.n_eta() + 1);
  for (int k = 0; k <= kg.n_xi(); ++k) exp_sig_[k] = std::exp(kg.xi(k));
  for (int j = 0; j <= kg.n_eta(); ++j) exp_meta_[j] = std::exp(-kg.eta(j));
}

std::vector<double> volterra_term(const KernelGrid& kg) {
  const int nx = kg.n_xi();
  const int ne = kg.n_eta();
  const double h = kg.step();
  const NodeCoefficients Q(kg);
  std::vector<double> out(static_cast<std::size_t>(nx + 1) * (ne + 1), kNaN);
  // S(i, j): trapezoid in t of F = Q L along row i, in units of h.
  std::vector<double> S(out.size(), 0.0);
  for (int i = 0; i <= nx; ++i) {
    double run = 0.0;
    double f_prev = Q(i, 0) * kg.L(i, 0);
    for (int j = 1; j <= ne && i + j <= nx; ++j) {
      const double f = Q(i, j) * kg.L(i, j);
      run += 0.5 * (f_prev + f);
      S[flat(kg, i, j)] = run;
      f_prev = f;
    }
  }
  // Trapezoid in s of S down each column, plus the part below xi_min.
  for (int j = 0; j <= std::min(ne, nx); ++j) {
    double run = 0.0;
    out[flat(kg, 0, j)] = kg.tail[j];
    for (int i = 1; i + j <= nx; ++i) {
      run += 0.5 * (S[flat(kg, i - 1, j)] + S[flat(kg, i, j)]);
      out[flat(kg, i, j)] = h * h * run + kg.tail[j];
    }
  }
  return out;
}

}  // namespace detail

double kernel_L(const KernelGrid& kg, double xi, double eta) {
  const double h = kg.step();
  if (!(eta >= 0.0) || eta > kg.eta_max() * (1.0 + 1e-12))
    throw DomainError(fmt::format("eta = {} outside [0, {}]", eta, kg.eta_max()));
  if (xi < kg.xi_min()) return kg.goursat().b(xi);
  const double ti = (xi - kg.xi_min()) / h;
  const double tj = eta / h;
  int i0 = std::clamp(static_cast<int>(std::floor(ti)) - 1, 0, kg.n_xi() - 3);
  const int j0 = std::clamp(static_cast<int>(std::floor(tj)) - 1, 0, kg.n_eta() - 3);
  while (i0 > 0 && !kg.valid(i0 + 3, j0 + 3)) --i0;
  if (!kg.valid(i0 + 3, j0 + 3))
    throw DomainError(fmt::format("point (xi={}, eta={}) outside the computed region", xi, eta));
  const auto wx = lagrange4(ti - i0);
  const auto wy = lagrange4(tj - j0);
  double d = 0.0;
  for (int p = 0; p < 4; ++p) {
    const double bi = kg.L(i0 + p, 0);
    double row = 0.0;
    for (int s = 0; s < 4; ++s) row += wy[s] * (kg.L(i0 + p, j0 + s) - bi);
    d += wx[p] * row;
  }
  return kg.goursat().b(xi) + d;
}

KernelValue kernel_K_detailed(const KernelGrid& kg, double r, double rho) {
  const double a = kg.potential().support();
  if (!(rho > 0.0)) throw DomainError(fmt::format("rho must be positive, got {}", rho));
  if (rho > r * (1.0 + 1e-14)) throw DomainError(fmt::format("rho = {} exceeds r = {}", rho, r));
  if (r > a * (1.0 + 1e-12)) throw DomainError(fmt::format("r = {} exceeds the support {}", r, a));
  rho = std::min(rho, r);
  const double xi = std::log(r) + std::log(rho);
  const double eta = std::log(r) - std::log(rho);
  KernelValue out;
  if (eta > kg.eta_max()) {
    const double c0 = 0.5 * kg.potential().cumulative_abs_moment(a);
    out.truncated = true;
    out.tail_bound =
        std::exp(0.5 * xi) * c0 * std::exp(majorant_exponent(eta * kg.goursat().mu1(xi + eta)));
    return out;
  }
  out.value = std::exp(0.5 * xi) * kernel_L(kg, xi, eta);
  return out;
}

double kernel_K(const KernelGrid& kg, double r, double rho) { return kernel_K_detailed(kg, r, rho).value; }

double apply_transform(const KernelGrid& kg, int ell, double r) {
  const double a = kg.potential().support();
  if (!(r > 0.0) || r > a * (1.0 + 1e-12))
    throw DomainError(fmt::format("apply_transform needs 0 < r <= a, got {}", r));
  r = std::min(r, a);
  const specfun::ScaledPair u = specfun::riccati_bessel_scaled(ell, r);
  const double x = 2.0 * std::log(r);
  // Integrand decays like exp(-(l + 1/2) eta).
  const double eta_end = std::min(kg.eta_max(), 45.0 / (ell + 0.5));
  auto f = [&](double eta) {
    const specfun::ScaledPair ur = specfun::riccati_bessel_scaled(ell, r * std::exp(-eta));
    return kernel_L(kg, x - eta, eta) * std::exp(0.5 * eta) * ur.mantissa *
           std::exp(ur.log_scale - u.log_scale);
  };
  const double integral = integrate_path(kg, x, eta_end, f);
  return (u.mantissa + integral) * std::exp(u.log_scale);
}

double recover_potential(const KernelGrid& kg, double r) {
  const Potential& q = kg.potential();
  const double a = q.support();
  const double d = 0.5 * a * kg.step();
  if (!(r > 2.0 * d)) throw DomainError(fmt::format("r = {} is within two difference steps of 0", r));
  if (r > a * (1.0 + 1e-12)) throw DomainError(fmt::format("r = {} exceeds the support {}", r, a));
  r = std::min(r, a);
  auto D = [&](double x) { return kernel_K(kg, x, x) / x; };
  const std::vector<double> jumps = q.jumps();
  auto jump_in = [&](double lo, double hi, bool closed_lo, bool closed_hi) {
    for (double j : jumps)
      if ((j > lo || (closed_lo && j == lo)) && (j < hi || (closed_hi && j == hi))) return true;
    return false;
  };
  double deriv;
  if (r + d <= a && !jump_in(r - d, r + d, true, true)) {
    deriv = (D(r + d) - D(r - d)) / (2.0 * d);
  } else if (!jump_in(r - 2.0 * d, r, true, false)) {
    deriv = (3.0 * D(r) - 4.0 * D(r - d) + D(r - 2.0 * d)) / (2.0 * d);
  } else if (r + 2.0 * d <= a && !jump_in(r, r + 2.0 * d, false, true)) {
    deriv = (-3.0 * D(r) + 4.0 * D(r + d) - D(r + 2.0 * d)) / (2.0 * d);
  } else {
    deriv = (D(std::min(r + d, a)) - D(r - d)) / (std::min(r + d, a) - r + d);
  }
  return 2.0 / r * deriv;
}

WeightedNorm weighted_l1_norm(const KernelGrid& kg, double r) {
  const double a = kg.potential().support();
  if (!(r > 0.0) || r > a * (1.0 + 1e-12))
    throw DomainError(fmt::format("weighted_l1_norm needs 0 < r <= a, got {}", r));
  r = std::min(r, a);
  const double x = 2.0 * std::log(r);
  WeightedNorm out;
  out.value = r * integrate_path(kg, x, kg.eta_max(), [&](double eta) {
    return std::abs(kernel_L(kg, x - eta, eta)) * std::exp(-0.5 * eta);
  });
  const double c0 = 0.5 * kg.potential().cumulative_abs_moment(a);
  if (c0 > 0.0) {
    const double m1 = kg.goursat().mu1(x);
    auto tail = [&](double eta) { return std::exp(majorant_exponent(eta * m1) - 0.5 * eta); };
    const double upper = std::numeric_limits<double>::infinity();
    out.tail_bound = r * c0 * quad::integrate(tail, kg.eta_max(), upper, 1e-10).value;
  }
  return out;
}

}  // namespace scatlab
