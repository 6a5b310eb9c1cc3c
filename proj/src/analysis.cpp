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

#include "scatlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "scatlab/csv.hpp"
#include "scatlab/error.hpp"
#include "scatlab/parallel.hpp"
#include "scatlab/quadrature.hpp"

namespace scatlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRtol = 1e-12;
constexpr double kRepresentationTol = 1e-6;

void require_right_half_plane(const AngularIndex& ell) {
  if (!ell.is_integer() && !(ell.value().real() > 0.0))
    throw DomainError(fmt::format("complex l must have Re l > 0, got {}", ell.value().real()));
}

double lnplus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

// Integrates f over [0, a] split at the breakpoints of p.
template <class F>
auto integrate_over(const DifferencePotential& p, F&& f) {
  return quad::integrate_split(f, 0.0, p.support(), p.p().breakpoints(), kRtol);
}

// r^{2l+2} I(l, r)^2 together with the worst relative error of I seen so far.
struct SquaredRepresentation {
  cplx ell;
  double worst = 0.0;

  cplx operator()(double r) {
    double err = 0.0;
    const cplx I = bessel_representation(ell, r, &err);
    if (std::abs(I) > 0.0) worst = std::max(worst, err / std::abs(I));
    return std::exp((2.0 * ell + 2.0) * std::log(r)) * I * I;
  }

  void check() const {
    if (worst > kRepresentationTol)
      throw ConvergenceError(
          fmt::format("t-quadrature for l = {}{:+}i reached only {:.2e} relative accuracy",
                      ell.real(), ell.imag(), worst),
          worst);
  }
};

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

cplx log_gamma_factor(cplx ell) {
  return (ell + 1.0) * std::numbers::ln2 + specfun::log_gamma(ell + 1.0);
}

cplx bessel_representation(cplx ell, double r, double* error) {
  // t = 1 - s^4 removes the endpoint singularity of (1 - t^2)^l:
  // I = 8 int_0^1 s^3 (s^4 (2 - s^4))^l cos(r (1 - s^4)) ds.
  auto f = [&](double s) {
    const double s4 = s * s * s * s;
    return 8.0 * s * s * s * std::exp(ell * std::log(s4 * (2.0 - s4))) * std::cos(r * (1.0 - s4));
  };
  const cplx hi = quad::gl_integrate(f, 0.0, 1.0, 96);
  if (error) *error = std::abs(hi - quad::gl_integrate(f, 0.0, 1.0, 64));
  return hi;
}

OrthogonalityValue h_ell(const DifferencePotential& p, int ell, const RadialOptions& opts) {
  RadialOptions base = opts;
  base.rtol = std::min(opts.rtol, 1e-11);
  RadialOptions tight = base;
  tight.rtol = base.rtol * 0.01;
  tight.atol = base.atol * 0.01;
  const OverlapIntegral o = overlap_integral(p.q1(), p.q2(), p.p(), ell, base);
  const OverlapIntegral t = overlap_integral(p.q1(), p.q2(), p.p(), ell, tight);
  // The tighter solve is reported. The boundary Wronskian cancels several
  // digits when h is small against phi_1 phi_2 at a.
  OrthogonalityValue out;
  out.ell = ell;
  out.value = t.value;
  out.boundary = t.boundary_term;
  out.scaled_value = t.scaled_value;
  out.scaled_boundary = t.scaled_boundary;
  out.log_scale = t.log_scale;
  out.error = std::abs(t.scaled_value - o.scaled_value * std::exp(o.log_scale - t.log_scale)) *
              std::exp(t.log_scale);
  return out;
}

ComplexValue h0_ell(const DifferencePotential& p, int ell) {
  if (ell < 0) throw DomainError("h0 needs l >= 0");
  if (p.is_zero()) return {};
  auto f = [&](double r) {
    const double u = specfun::riccati_bessel(ell, r);
    return p(r) * u * u;
  };
  const auto res = integrate_over(p, f);
  return {cplx(res.value, 0.0), res.error};
}

ComplexValue h0_ell(const DifferencePotential& p, const AngularIndex& ell) {
  require_right_half_plane(ell);
  if (p.is_zero()) return {};
  const cplx l = ell.value();
  const cplx log_c = log_gamma_factor(l);
  SquaredRepresentation sq{l};
  auto f = [&](double r) { return p(r) * sq(r) * std::exp(-2.0 * log_c); };
  const auto res = integrate_over(p, f);
  sq.check();
  return {res.value, res.error + 2.0 * sq.worst * std::abs(res.value)};
}

ComplexValue H_ell(const DifferencePotential& p, const AngularIndex& ell) {
  require_right_half_plane(ell);
  if (p.is_zero()) return {};
  SquaredRepresentation sq{ell.value()};
  auto f = [&](double r) { return p(r) * sq(r); };
  const auto res = integrate_over(p, f);
  sq.check();
  return {res.value, res.error + 2.0 * sq.worst * std::abs(res.value)};
}

ScaledReal h0_ell_scaled(const DifferencePotential& p, int ell) {
  if (ell < 0) throw DomainError("h0 needs l >= 0");
  if (p.is_zero()) return {};
  const double a = p.support();
  const double ls_a = specfun::riccati_bessel_scaled(ell, a).log_scale;
  auto f = [&](double r) {
    const specfun::ScaledPair u = specfun::riccati_bessel_scaled(ell, r);
    const double v = u.mantissa * std::exp(u.log_scale - ls_a);
    return p(r) * v * v;
  };
  return {integrate_over(p, f).value, 2.0 * ls_a};
}

FunctionalSample functional_sample(const DifferencePotential& p, const AngularIndex& ell,
                                   const RadialOptions& opts) {
  FunctionalSample s;
  s.ell = ell.value();
  const ComplexValue H = H_ell(p, ell);
  s.H = H.value;
  s.quadrature_error = H.error;
  if (ell.is_integer()) {
    const int l = ell.as_int();
    const ComplexValue h0 = h0_ell(p, l);
    s.h0 = h0.value;
    s.has_h = true;
    const OrthogonalityValue h = p.is_zero() ? OrthogonalityValue{} : h_ell(p, l, opts);
    s.h = h.value;
    s.h1 = std::exp(2.0 * log_gamma_factor(s.ell)) * h.value;
    s.quadrature_error = std::max({s.quadrature_error, h0.error, h.error});
  } else {
    const ComplexValue h0 = h0_ell(p, ell);
    s.h0 = h0.value;
    s.quadrature_error = std::max(s.quadrature_error, h0.error);
  }
  return s;
}

std::vector<FunctionalSample> functional_scan(const DifferencePotential& p,
                                              const std::vector<AngularIndex>& ells, int threads) {
  std::vector<FunctionalSample> out(ells.size());
  parallel_for(static_cast<int>(ells.size()), threads,
               [&](int i) { out[i] = functional_sample(p, ells[i]); });
  return out;
}

std::string functional_scan_csv(const std::vector<FunctionalSample>& samples,
                                const std::string& potential_id) {
  CsvTable csv({"ell_re", "ell_im", "h0_re", "h0_im", "H_re", "H_im", "quadrature_error"});
  csv.add_meta("potential", potential_id);
  for (const auto& s : samples)
    csv.add_row({s.ell.real(), s.ell.imag(), s.h0.real(), s.h0.imag(), s.H.real(), s.H.imag(),
                 s.quadrature_error});
  return csv.str();
}

double growth_constant(const DifferencePotential& p) {
  return 4.0 * p.support() * p.p().first_moment();
}

GrowthCheck growth_check(const DifferencePotential& p, int n_sigma, int n_tau, double s_lo,
                         double s_hi, double t_lo, double t_hi, int threads) {
  if (n_sigma < 1 || n_tau < 1 || !(s_lo > 0.0) || s_hi < s_lo || t_hi < t_lo)
    throw DomainError("growth_check: invalid sampling box");
  const double a = p.support();
  const double c = growth_constant(p);
  const double moment = p.p().first_moment();
  GrowthCheck out;
  out.samples.resize(static_cast<std::size_t>(n_sigma) * n_tau);
  parallel_for(static_cast<int>(out.samples.size()), threads, [&](int k) {
    const int i = k / n_tau, j = k % n_tau;
    const double sigma = n_sigma == 1 ? s_lo : s_lo + (s_hi - s_lo) * i / (n_sigma - 1);
    const double tau = n_tau == 1 ? t_lo : t_lo + (t_hi - t_lo) * j / (n_tau - 1);
    GrowthSample& g = out.samples[k];
    g.ell = {sigma, tau};
    const ComplexValue H = H_ell(p, AngularIndex::complex(g.ell));
    g.abs_H = std::abs(H.value);
    g.bound = c * std::pow(a, 2.0 * sigma);
    g.bound_literal = moment * std::pow(a, 2.0 * sigma + 1.0);
  });
  out.holds = out.literal_holds = true;
  for (const auto& g : out.samples) {
    if (g.abs_H > g.bound * (1.0 + 1e-12)) out.holds = false;
    if (g.abs_H > g.bound_literal * (1.0 + 1e-12)) out.literal_holds = false;
  }
  return out;
}

NevanlinnaResult nevanlinna_integral(const DifferencePotential& p, double r_disc, int n_phi,
                                     int threads) {
  if (!(r_disc > 0.0 && r_disc < 1.0))
    throw DomainError(fmt::format("disc radius must lie in (0, 1), got {}", r_disc));
  if (n_phi < 8) throw DomainError("n_phi must be at least 8");
  NevanlinnaResult out;
  out.r_disc = r_disc;
  out.points = n_phi;
  out.bound = 2.0 * kPi * lnplus(growth_constant(p)) + 4.0 * kPi * std::log(std::max(p.support(), 1.0));
  if (p.is_zero()) return out;
  std::vector<double> terms(n_phi);
  parallel_for(n_phi, threads, [&](int k) {
    const double phi = -kPi + 2.0 * kPi * k / n_phi;
    const cplx w = std::polar(r_disc, phi);
    const cplx ell = (1.0 - w) / (1.0 + w);
    const double h = std::abs(H_ell(p, AngularIndex::complex(ell)).value);
    terms[k] = h <= 1e-300 ? 0.0 : lnplus(h);
  });
  double sum = 0.0;
  for (double t : terms) sum += t;
  out.value = 2.0 * kPi / n_phi * sum;
  return out;
}

double poisson_integral(double r, int n_phi) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("poisson_integral needs 0 < r < 1");
  double sum = 0.0;
  for (int k = 0; k < n_phi; ++k) {
    const double phi = -kPi + 2.0 * kPi * k / n_phi;
    sum += 1.0 / (1.0 + r * r + 2.0 * r * std::cos(phi));
  }
  return 2.0 * kPi / n_phi * sum;
}

ContourCheck cauchy_contour_check(const DifferencePotential& p, cplx center, double radius, int n,
                                  int threads) {
  if (!(radius > 0.0) || center.real() - radius <= 0.0)
    throw DomainError("contour must lie in Re l > 0");
  std::vector<cplx> terms(n);
  std::vector<double> mags(n);
  parallel_for(n, threads, [&](int k) {
    const cplx e = std::polar(1.0, 2.0 * kPi * k / n);
    const cplx H = H_ell(p, AngularIndex::complex(center + radius * e)).value;
    mags[k] = std::abs(H);
    terms[k] = H * cplx(0.0, radius) * e;
  });
  ContourCheck out;
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    sum += terms[k];
    out.max_abs = std::max(out.max_abs, mags[k]);
  }
  out.modulus = std::abs(sum * (2.0 * kPi / n));
  return out;
}

// ---- index sets -------------------------------------------------------------

std::string to_string(MuntzClass c) {
  switch (c) {
    case MuntzClass::divergent:
      return "divergent";
    case MuntzClass::convergent:
      return "convergent";
    case MuntzClass::unknown:
      break;
  }
  return "unknown";
}

namespace {

int parse_int(const std::string& text, const std::string& whole) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw ParseError(fmt::format("index set '{}': '{}' is not an integer", whole, text));
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

IndexSet IndexSet::arithmetic(int c, int d) {
  if (c < 0 || d < 1) throw ValidationError("arithmetic index set needs c >= 0 and d >= 1");
  return IndexSet(Family::arithmetic, c, d, {});
}

IndexSet IndexSet::primes() { return IndexSet(Family::primes, 0, 1, {}); }

IndexSet IndexSet::geometric(int base) {
  if (base < 2) throw ValidationError("geometric index set needs base >= 2");
  return IndexSet(Family::geometric, 0, base, {});
}

IndexSet IndexSet::list(std::vector<int> values) {
  if (values.empty()) throw ValidationError("explicit index set is empty");
  for (int v : values)
    if (v < 0) throw ValidationError("index set members must be >= 0");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return IndexSet(Family::list, 0, 1, std::move(values));
}

IndexSet IndexSet::parse(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.empty()) throw ParseError("empty index set");
  const std::string& kind = parts[0];
  if (kind == "arithmetic") {
    if (parts.size() != 3) throw ParseError(fmt::format("expected arithmetic:c:d, got '{}'", text));
    return arithmetic(parse_int(parts[1], text), parse_int(parts[2], text));
  }
  if (kind == "primes") {
    if (parts.size() != 1) throw ParseError(fmt::format("expected primes, got '{}'", text));
    return primes();
  }
  if (kind == "geometric") {
    if (parts.size() != 2) throw ParseError(fmt::format("expected geometric:b, got '{}'", text));
    return geometric(parse_int(parts[1], text));
  }
  if (kind == "list") {
    if (parts.size() != 2 || parts[1].empty())
      throw ParseError(fmt::format("expected list:l1,l2,..., got '{}'", text));
    std::vector<int> values;
    for (const std::string& item : split(parts[1], ',')) values.push_back(parse_int(item, text));
    return list(std::move(values));
  }
  throw ParseError(fmt::format("unknown index set family '{}'", kind));
}

std::vector<int> IndexSet::members(int l_max) const {
  std::vector<int> out;
  switch (family_) {
    case Family::arithmetic:
      for (long long v = c_; v <= l_max; v += d_) out.push_back(static_cast<int>(v));
      break;
    case Family::primes: {
      if (l_max < 2) break;
      std::vector<bool> composite(l_max + 1, false);
      for (int n = 2; n <= l_max; ++n) {
        if (composite[n]) continue;
        out.push_back(n);
        for (long long m = 1LL * n * n; m <= l_max; m += n) composite[m] = true;
      }
      break;
    }
    case Family::geometric:
      for (long long v = 1; v <= l_max; v *= d_) out.push_back(static_cast<int>(v));
      break;
    case Family::list:
      for (int v : values_)
        if (v <= l_max) out.push_back(v);
      break;
  }
  return out;
}

bool IndexSet::contains(int ell) const {
  const std::vector<int> m = members(ell);
  return !m.empty() && m.back() == ell;
}

std::string IndexSet::descriptor() const {
  switch (family_) {
    case Family::arithmetic:
      return fmt::format("arithmetic:{}:{}", c_, d_);
    case Family::primes:
      return "primes";
    case Family::geometric:
      return fmt::format("geometric:{}", d_);
    case Family::list:
      break;
  }
  return fmt::format("list:{}", fmt::join(values_, ","));
}

MuntzClass muntz_classify(const IndexSet& s) {
  switch (s.family()) {
    case IndexSet::Family::arithmetic:
    case IndexSet::Family::primes:
      return MuntzClass::divergent;
    case IndexSet::Family::geometric:
      return MuntzClass::convergent;
    case IndexSet::Family::list:
      break;
  }
  return MuntzClass::unknown;
}

double muntz_partial_sum(const IndexSet& s, int l_max) {
  double sum = 0.0;
  for (int v : s.members(l_max))
    if (v > 0) sum += 1.0 / v;
  return sum;
}

// ---- heuristic ------------------------------------------------------------------

MomentHeuristic moment_heuristic(const DifferencePotential& p, int ell, HeuristicPath path) {
  if (ell < 20) throw DomainError(fmt::format("moment heuristic needs l >= 20, got {}", ell));
  MomentHeuristic out;
  out.ell = ell;
  if (p.is_zero()) {
    out.degenerate = true;
    out.ratio = 1.0;
    return out;
  }
  const double a = p.support();
  const double n = 2.0 * ell + 1.0;
  const double log_p2 = -std::numbers::ln2 + n * (1.0 - std::log(n)) - std::log(n);
  const double m = integrate_over(p, [&](double r) { return p(r) * std::pow(r / a, 2.0 * ell + 2.0); }).value;

  double mant = 0.0, log_scale = 0.0;
  if (path == HeuristicPath::free) {
    const ScaledReal h0 = h0_ell_scaled(p, ell);
    mant = h0.mantissa;
    log_scale = h0.log_scale;
  } else {
    const OrthogonalityValue h = h_ell(p, ell);
    mant = h.scaled_value;
    log_scale = h.log_scale;
  }
  out.sign_h = (mant > 0) - (mant < 0);
  out.sign_moment = (m > 0) - (m < 0);
  out.log_abs_h = mant != 0.0 ? std::log(std::abs(mant)) + log_scale : -HUGE_VAL;
  out.log_abs_moment = m != 0.0 ? std::log(std::abs(m)) + (2.0 * ell + 2.0) * std::log(a) + log_p2
                                : -HUGE_VAL;
  if (out.sign_h == 0 || out.sign_moment == 0) {
    out.degenerate = true;
    out.ratio = out.sign_h == out.sign_moment ? 1.0 : (out.sign_moment == 0 ? HUGE_VAL : 0.0);
    return out;
  }
  out.ratio = out.sign_h * out.sign_moment * std::exp(out.log_abs_h - out.log_abs_moment);
  return out;
}

// ---- discrimination -----------------------------------------------------------

std::string DiscriminationReport::to_csv() const {
  CsvTable csv({"ell", "delta1", "delta2", "h"});
  csv.add_meta("index_set", index_set);
  csv.add_meta("l_max", std::to_string(l_max));
  csv.add_meta("sup_delta", sup_delta);
  csv.add_meta("sup_h", sup_h);
  csv.add_meta("correlation", correlation);
  csv.add_meta("boundary_mismatch", boundary_mismatch);
  for (const auto& r : rows) csv.add_row({static_cast<double>(r.ell), r.delta1, r.delta2, r.h});
  return csv.str();
}

DiscriminationReport discrimination_experiment(const Potential& q1, const Potential& q2,
                                               const IndexSet& s, int l_max, int threads) {
  if (l_max < 0 || l_max > 100)
    throw DomainError(fmt::format("discrimination needs 0 <= l_max <= 100, got {}", l_max));
  const DifferencePotential p(q1, q2);
  DiscriminationReport rep;
  rep.index_set = s.descriptor();
  rep.l_max = l_max;
  const std::vector<int> ells = s.members(l_max);
  rep.rows.resize(ells.size());
  parallel_for(static_cast<int>(ells.size()), threads, [&](int k) {
    const int ell = ells[k];
    const PhaseShift s1 = phase_shift(q1, ell);
    const PhaseShift s2 = phase_shift(q2, ell);
    DiscriminationRow& row = rep.rows[k];
    row.ell = ell;
    row.delta1 = s1.delta;
    row.delta2 = s2.delta;
    row.h = p.is_zero() ? 0.0 : overlap_integral(q1, q2, p.p(), ell).value;
    row.h_from_phases = std::exp(s1.log_jost_magnitude + s2.log_jost_magnitude) *
                        std::sin(s2.delta - s1.delta);
  });
  std::vector<double> d, h;
  double mismatch = 0.0;
  for (const auto& r : rep.rows) {
    d.push_back(std::abs(reduce_phase(r.delta1 - r.delta2)));
    h.push_back(std::abs(r.h));
    rep.sup_delta = std::max(rep.sup_delta, d.back());
    rep.sup_h = std::max(rep.sup_h, h.back());
    mismatch = std::max(mismatch, std::abs(r.h - r.h_from_phases));
  }
  rep.correlation = pearson(d, h);
  rep.boundary_mismatch = rep.sup_h > 0.0 ? mismatch / rep.sup_h : mismatch;
  return rep;
}

}  // namespace scatlab
