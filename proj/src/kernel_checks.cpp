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

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "kernel_detail.hpp"
#include "scatlab/error.hpp"
#include "scatlab/kernel.hpp"
#include "scatlab/quadrature.hpp"
#include "scatlab/specfun.hpp"

namespace scatlab {

namespace {

double majorant(double c, double z) { return c * std::exp(2.1 * std::pow(std::max(z, 0.0), 0.6)); }

// Least-squares fit y ~ p0 + p1 x1 + p2 x2.
std::array<double, 3> fit3(const std::vector<double>& y, const std::vector<double>& x1,
                           const std::vector<double>& x2) {
  double A[3][4] = {};
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double row[3] = {1.0, x1[k], x2[k]};
    for (int p = 0; p < 3; ++p) {
      for (int s = 0; s < 3; ++s) A[p][s] += row[p] * row[s];
      A[p][3] += row[p] * y[k];
    }
  }
  for (int p = 0; p < 3; ++p) {
    int piv = p;
    for (int s = p + 1; s < 3; ++s)
      if (std::abs(A[s][p]) > std::abs(A[piv][p])) piv = s;
    for (int s = 0; s < 4; ++s) std::swap(A[p][s], A[piv][s]);
    for (int s = 0; s < 3; ++s) {
      if (s == p) continue;
      const double f = A[s][p] / A[p][p];
      for (int t = p; t < 4; ++t) A[s][t] -= f * A[p][t];
    }
  }
  return {A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
}

}  // namespace

double picard_majorant(const GoursatData& gd, double xi, double eta, int n_terms) {
  if (n_terms < 1) throw DomainError("picard_majorant needs n_terms >= 1");
  if (!(eta >= 0.0)) throw DomainError("picard_majorant needs eta >= 0");
  const double z = eta * gd.mu1(xi + eta);
  double term = 1.0, sum = 1.0;
  for (int n = 1; n <= n_terms; ++n) {
    term *= z / (static_cast<double>(n) * n);
    sum += term;
  }
  return sum;
}

MajorantCheck majorant_check(const KernelGrid& kg) {
  MajorantCheck out;
  for (int i = 0; i <= kg.n_xi(); ++i) out.c = std::max(out.c, std::abs(kg.L(i, 0)));
  if (out.c == 0.0) {
    out.holds = kg.sup_abs() == 0.0;
    return out;
  }
  for (int i = 0; i <= kg.n_xi(); ++i)
    for (int j = 0; j <= kg.n_eta() && i + j <= kg.n_xi(); ++j) {
      const double z = kg.eta(j) * kg.goursat().mu1(kg.xi(i) + kg.eta(j));
      out.worst_ratio = std::max(out.worst_ratio, std::abs(kg.L(i, j)) / majorant(out.c, z));
    }
  out.holds = out.worst_ratio <= 1.0;
  return out;
}

IteratedBoundCheck iterated_bound_check(const GoursatData& gd, int n_max, double h, double xi_span,
                                        double eta_hi) {
  if (n_max < 1 || !(h > 0.0) || !(xi_span > h) || !(eta_hi > h))
    throw DomainError("iterated_bound_check: invalid grid parameters");
  const int nx = static_cast<int>(std::round(xi_span / h));
  const int ne = static_cast<int>(std::round(eta_hi / h));
  const double x1 = 2.0 * std::log(gd.potential().support());
  const double x0 = x1 - nx * h;
  auto at = [ne](int i, int j) { return static_cast<std::size_t>(i) * (ne + 1) + j; };

  std::vector<double> mu(nx + ne + 1);
  for (int k = 0; k <= nx + ne; ++k) mu[k] = gd.mu(x0 + k * h);

  IteratedBoundCheck out;
  out.holds = true;
  std::vector<double> m(static_cast<std::size_t>(nx + 1) * (ne + 1), 1.0);
  std::vector<double> next(m.size()), rowsum(m.size());
  double nfact = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    nfact *= n;
    // W^{n-1}1 vanishes like t^{n-1}; the t-integrals use product weights
    // exact for t^{n-1} times a linear function.
    const int k = n - 1;
    std::vector<double> wl(ne + 1), wr(ne + 1);
    for (int j = 1; j <= ne; ++j) {
      const double t0 = (j - 1) * h, t1 = j * h;
      const double m0 = (std::pow(t1, k + 1) - std::pow(t0, k + 1)) / (k + 1);
      const double m1 = (std::pow(t1, k + 2) - std::pow(t0, k + 2)) / (k + 2);
      wl[j] = (t1 * m0 - m1) / h;
      wr[j] = (m1 - t0 * m0) / h;
    }
    auto smooth = [&](int i, int j) {
      if (k == 0) return m[at(i, j)];
      if (j == 0) {
        const double p1 = m[at(i, 1)] / std::pow(h, k);
        const double p2 = m[at(i, 2)] / std::pow(2.0 * h, k);
        return 2.0 * p1 - p2;
      }
      return m[at(i, j)] / std::pow(j * h, k);
    };
    // Part of the s-integral below x0. There mu ~ e^s and W^{n-1}1 ~ e^{(n-1)s},
    // so the s-integral of their product is mu(x0 + t) W^{n-1}1(x0, t) / n.
    std::vector<double> tail(ne + 1, 0.0);
    for (int j = 1; j <= ne; ++j)
      tail[j] = tail[j - 1] + (wl[j] * mu[j - 1] * smooth(0, j - 1) + wr[j] * mu[j] * smooth(0, j)) / n;
    for (int i = 0; i <= nx; ++i) {
      double run = 0.0;
      rowsum[at(i, 0)] = 0.0;
      for (int j = 1; j <= ne; ++j) {
        run += wl[j] * mu[i + j - 1] * smooth(i, j - 1) + wr[j] * mu[i + j] * smooth(i, j);
        rowsum[at(i, j)] = run;
      }
    }
    double worst = 0.0;
    for (int j = 0; j <= ne; ++j) {
      double run = 0.0;
      next[at(0, j)] = tail[j];
      for (int i = 1; i <= nx; ++i) {
        run += 0.5 * h * (rowsum[at(i - 1, j)] + rowsum[at(i, j)]);
        next[at(i, j)] = tail[j] + run;
      }
    }
    for (int i = 0; i <= nx; ++i)
      for (int j = 1; j <= ne; ++j) {
        const double eta = j * h;
        const double bound = std::pow(eta * gd.mu1(x0 + i * h + eta), n) / (nfact * nfact);
        if (bound > 0.0) worst = std::max(worst, next[at(i, j)] / bound);
      }
    out.worst_ratio.push_back(worst);
    if (!(worst <= 1.0)) out.holds = false;
    std::swap(m, next);
  }
  return out;
}

ContractionEstimate contraction_estimate(const KernelGrid& kg, int trials,
                                         unsigned long long seed, double h, double xi_span) {
  if (trials < 1 || !(h > 0.0) || !(xi_span > h))
    throw DomainError("contraction_estimate: invalid parameters");
  ContractionEstimate out;
  out.gamma = kg.gamma;
  out.bound = kg.contraction_c / kg.gamma;
  out.trials = trials;

  const GoursatData& gd = kg.goursat();
  const double A = kg.xi_max();
  const int nx = static_cast<int>(std::round(xi_span / h));
  const int ne = std::max(2, static_cast<int>(std::round(kg.eta_max() / h)));
  const double ht = kg.eta_max() / ne;
  const double x0 = A - nx * h;
  auto at = [ne](int i, int j) { return static_cast<std::size_t>(i) * (ne + 1) + j; };

  std::vector<double> Q(static_cast<std::size_t>(nx + 1) * (ne + 1));
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ne; ++j) Q[at(i, j)] = gd.Q(x0 + i * h, j * ht);

  // With L = e^{gamma t} eps, the weighted value of VL is
  // int ds int dt Q eps e^{-gamma (eta - t)}; the t-integral is done by
  // product integration against the exponential, exact for linear Q eps.
  const double x = out.gamma * ht;
  const double decay = std::exp(-x);
  const double phi = -std::expm1(-x) / x;  // (1 - e^{-x}) / x
  const double w_new = ht * (1.0 - phi) / x;
  const double w_old = ht * (phi - decay) / x;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> eps(Q.size()), inner(Q.size());
  for (int trial = 0; trial < trials; ++trial) {
    for (std::size_t k = 0; k < eps.size(); ++k)
      eps[k] = trial == 0 ? (Q[k] >= 0.0 ? 1.0 : -1.0) : unif(rng);
    double eps_norm = 0.0;
    for (double e : eps) eps_norm = std::max(eps_norm, std::abs(e));
    for (int i = 0; i <= nx; ++i) {
      double I = 0.0;
      inner[at(i, 0)] = 0.0;
      for (int j = 1; j <= ne; ++j) {
        I = decay * I + w_old * Q[at(i, j - 1)] * eps[at(i, j - 1)] + w_new * Q[at(i, j)] * eps[at(i, j)];
        inner[at(i, j)] = I;
      }
    }
    double vnorm = 0.0;
    for (int j = 0; j <= ne; ++j) {
      double run = 0.0;
      for (int i = 1; i <= nx; ++i) {
        run += 0.5 * h * (inner[at(i - 1, j)] + inner[at(i, j)]);
        vnorm = std::max(vnorm, std::abs(run));
      }
    }
    out.max_ratio = std::max(out.max_ratio, vnorm / eps_norm);
  }
  return out;
}

FixedPointResidual fixed_point_residual(const KernelGrid& kg) {
  const std::vector<double> v = detail::volterra_term(kg);
  double res_w = 0.0, res_u = 0.0, l_w = 0.0, l_u = 0.0;
  for (int i = 0; i <= kg.n_xi(); ++i) {
    const double b = kg.goursat().b(kg.xi(i));
    for (int j = 0; j <= kg.n_eta() && i + j <= kg.n_xi(); ++j) {
      const double w = std::exp(-kg.gamma * kg.eta(j));
      const double l = kg.L(i, j);
      const double r = std::abs(l - b + v[detail::flat(kg, i, j)]);
      res_u = std::max(res_u, r);
      l_u = std::max(l_u, std::abs(l));
      res_w = std::max(res_w, w * r);
      l_w = std::max(l_w, w * std::abs(l));
    }
  }
  FixedPointResidual out;
  out.unweighted = l_u > 0.0 ? res_u / l_u : res_u;
  out.weighted = l_w > 0.0 ? res_w / l_w : res_w;
  return out;
}

CompletenessVerdict legendre_completeness_check(const std::function<double(double)>& f, double A,
                                                double r, double tol) {
  if (!(r > 0.0)) throw DomainError("legendre_completeness_check needs r > 0");
  constexpr int kMaxDegree = 12;
  constexpr int kPanels = 16;
  const quad::Rule& tr = quad::gauss_legendre(64);
  const quad::Rule& pr = quad::gauss_legendre(16);
  std::vector<double> rho, wrho, frho;
  const double width = r / kPanels;
  for (int p = 0; p < kPanels; ++p)
    for (std::size_t k = 0; k < pr.x.size(); ++k) {
      const double x = p * width + 0.5 * width * (pr.x[k] + 1.0);
      rho.push_back(x);
      wrho.push_back(0.5 * width * pr.w[k]);
      frho.push_back(x * f(x));
    }
  CompletenessVerdict out;
  out.projections.assign(kMaxDegree + 1, {0.0, 0.0});
  for (std::size_t k = 0; k < tr.x.size(); ++k) {
    const double t = tr.x[k];
    std::complex<double> M = r * A * std::polar(1.0, r * t);
    for (std::size_t s = 0; s < rho.size(); ++s) M += wrho[s] * frho[s] * std::polar(1.0, rho[s] * t);
    for (int n = 0; n <= kMaxDegree; ++n)
      out.projections[n] += tr.w[k] * M * specfun::legendre_poly(n, t);
  }
  for (const auto& c : out.projections) out.max_abs = std::max(out.max_abs, std::abs(c));
  out.consistent_with_zero = out.max_abs < tol;
  return out;
}

OrderTypeEstimate estimate_order_type(const std::function<double(int)>& log_abs_coeff, int n_max) {
  if (n_max < 16) throw DomainError("estimate_order_type needs n_max >= 16");
  auto raw_order = [&](int n) { return n * std::log(n) / -log_abs_coeff(n); };
  std::vector<double> y, x1, x2;
  for (int n = n_max / 4; n <= n_max; ++n) {
    y.push_back(1.0 / raw_order(n));
    x1.push_back(1.0 / std::log(n));
    x2.push_back(1.0 / n);
  }
  OrderTypeEstimate out;
  out.raw_order = raw_order(n_max);
  out.order = 1.0 / fit3(y, x1, x2)[0];
  const double rho = out.order;
  auto raw_type = [&](int n) {
    return std::exp(std::log(n) + rho / n * log_abs_coeff(n) - 1.0 - std::log(rho));
  };
  y.clear();
  x1.clear();
  x2.clear();
  for (int n = n_max / 4; n <= n_max; ++n) {
    y.push_back(raw_type(n));
    x1.push_back(std::log(n) / n);
    x2.push_back(1.0 / n);
  }
  out.raw_type = raw_type(n_max);
  out.type = fit3(y, x1, x2)[0];
  return out;
}

OrderTypeEstimate majorant_order_type(int n_max) {
  return estimate_order_type([](int n) { return -2.0 * std::lgamma(n + 1.0); }, n_max);
}

}  // namespace scatlab
