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

#include "scatlab/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "scatlab/csv.hpp"
#include "scatlab/error.hpp"
#include "scatlab/parallel.hpp"

namespace scatlab {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr int kMaxEll = 1000;

void check_ell(int ell) {
  if (ell < 0 || ell > kMaxEll)
    throw DomainError(fmt::format("angular momentum must lie in [0, {}], got {}", kMaxEll, ell));
}

Segment segment_at(const Potential& q, double mid) {
  if (mid > q.support()) return {};
  for (const Segment& s : q.segments())
    if (mid > s.lo && mid <= s.hi) return s;
  return {};
}

// Frobenius coefficients of w for q = alpha + beta r near the origin.
std::array<double, 11> frobenius(int ell, const Segment& s) {
  std::array<double, 11> c{};
  c[0] = 1.0;
  for (int n = 2; n < static_cast<int>(c.size()); ++n) {
    const double prev3 = n >= 3 ? c[n - 3] : 0.0;
    c[n] = ((s.alpha - 1.0) * c[n - 2] + s.beta * prev3) / (n * (n + 2.0 * ell + 1.0));
  }
  return c;
}

std::pair<double, double> frobenius_eval(const std::array<double, 11>& c, double r) {
  double w = 0.0, wp = 0.0;
  for (int n = static_cast<int>(c.size()) - 1; n >= 0; --n) {
    w = w * r + c[n];
    if (n >= 1) wp = wp * r + n * c[n];
  }
  return {w, wp};
}

// Start radius: small enough that the leading term alone matches w to 1e-6
// and that the first segment's series is valid there.
double start_radius(int ell, const Potential& q, double c2) {
  double r0 = std::min(1e-3, q.support() * 1e-3) * (ell + 1);
  if (c2 != 0.0) r0 = std::min(r0, std::sqrt(1e-7 / std::abs(c2)));
  r0 = std::min(r0, 0.5 * q.segments().front().hi);
  return r0;
}

std::vector<double> cuts_between(double r0, double R, std::initializer_list<const Potential*> qs) {
  std::vector<double> cuts{r0};
  for (const Potential* q : qs)
    for (double b : q->breakpoints())
      if (b > r0 && b < R) cuts.push_back(b);
  cuts.push_back(R);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Integrates `sys` across [cuts.front(), cuts.back()], restarting the stepper
// at every cut, and reports the state at each requested radius.
template <class State, class MakeSystem, class Record>
void integrate_piecewise(MakeSystem make_system, State& x, const std::vector<double>& cuts,
                         const std::vector<double>& samples, double rtol, double atol,
                         Record record) {
  auto stepper = odeint::make_controlled(atol, rtol, odeint::runge_kutta_fehlberg78<State>());
  std::size_t next = 0;
  while (next < samples.size() && samples[next] <= cuts.front()) record(next++, x);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    std::vector<double> times{lo};
    std::vector<std::size_t> ids{static_cast<std::size_t>(-1)};
    for (std::size_t i = next; i < samples.size() && samples[i] <= hi; ++i) {
      if (samples[i] > lo && samples[i] < hi) {
        times.push_back(samples[i]);
        ids.push_back(i);
      }
    }
    times.push_back(hi);
    ids.push_back(static_cast<std::size_t>(-1));
    auto sys = make_system(0.5 * (lo + hi));
    std::size_t counter = 0;
    auto observer = [&](const State& s, double) {
      if (ids[counter] != static_cast<std::size_t>(-1)) record(ids[counter], s);
      ++counter;
    };
    try {
      odeint::integrate_times(stepper, sys, x, times.begin(), times.end(), (hi - lo) / 16.0,
                              observer, odeint::max_step_checker(200000));
    } catch (const odeint::odeint_error& e) {
      throw ConvergenceError(
          fmt::format("radial integration stalled on [{}, {}]: {}", lo, hi, e.what()), hi);
    }
    for (double v : x)
      if (!std::isfinite(v))
        throw ConvergenceError(fmt::format("radial solution overflowed on [{}, {}]", lo, hi), hi);
    while (next < samples.size() && samples[next] <= hi) {
      if (samples[next] == hi) record(next, x);
      ++next;
    }
  }
}

using State2 = std::array<double, 2>;
using State5 = std::array<double, 5>;

}  // namespace

double reduce_phase(double delta) {
  constexpr double pi = std::numbers::pi;
  double d = std::remainder(delta, 2.0 * pi);  // in [-pi, pi]
  if (d >= pi) d -= 2.0 * pi;
  return d;
}

PhaseShift match_free_basis(int ell, double r, const specfun::ScaledPair& phi) {
  const specfun::ScaledPair u = specfun::riccati_bessel_scaled(ell, r);
  const specfun::ScaledPair v = specfun::riccati_neumann_scaled(ell, r);
  // W(phi, u) = |F| sin d and W(phi, v) = |F| cos d with W(f, g) = f g' - f' g.
  const double a = phi.mantissa * u.derivative - phi.derivative * u.mantissa;
  const double b = phi.mantissa * v.derivative - phi.derivative * v.mantissa;
  const double y = a * std::exp(u.log_scale - v.log_scale);
  PhaseShift out;
  out.delta = reduce_phase(std::atan2(y, b));
  const double mag = std::hypot(y, b);
  if (!(mag > 0.0)) throw ConvergenceError("vanishing Jost magnitude", 0.0);
  out.log_jost_magnitude = phi.log_scale + v.log_scale + std::log(mag);
  out.jost_magnitude = std::exp(out.log_jost_magnitude);
  return out;
}

double RadialSolution::log_scale(double r) const {
  return (ell + 1) * std::log(r) - specfun::log_odd_double_factorial(ell);
}

specfun::ScaledPair RadialSolution::scaled_phi(std::size_t i) const {
  const double r = grid.at(i);
  return {w[i], (ell + 1) / r * w[i] + w_prime[i], log_scale(r)};
}

RadialSolution regular_solution(const Potential& q, int ell, const RadialOptions& opts) {
  check_ell(ell);
  if (!(opts.scale > 0.0) || !std::isfinite(opts.scale))
    throw DomainError("internal scale must be positive and finite");
  if (opts.grid_points < 0) throw DomainError("grid_points must be >= 0");
  const double R = std::max(q.support(), opts.r_end);
  const Segment first = q.segments().front();
  const auto coeff = frobenius(ell, first);
  const double r0 = start_radius(ell, q, coeff[2]);

  RadialSolution sol;
  sol.ell = ell;
  sol.start_radius = r0;
  std::vector<double>& grid = sol.grid;
  grid.push_back(r0);
  for (int k = 1; k <= opts.grid_points; ++k) grid.push_back(R * k / opts.grid_points);
  for (double r : opts.extra_radii) {
    if (!(r > 0.0) || r > R) throw DomainError(fmt::format("sample radius {} outside (0, {}]", r, R));
    grid.push_back(r);
  }
  grid.push_back(R);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(), [r0](double r) { return r < r0; }), grid.end());

  const std::size_t n = grid.size();
  sol.w.assign(n, 0.0);
  sol.w_prime.assign(n, 0.0);

  auto [w0, wp0] = frobenius_eval(coeff, r0);
  State2 x{w0 * opts.scale, wp0 * opts.scale};
  const double lp1 = ell + 1.0;
  auto make_system = [&](double mid) {
    const Segment s = segment_at(q, mid);
    return [s, lp1](const State2& y, State2& dy, double r) {
      dy[0] = y[1];
      dy[1] = (s.at(r) - 1.0) * y[0] - 2.0 * lp1 / r * y[1];
    };
  };
  auto record = [&](std::size_t i, const State2& y) {
    sol.w[i] = y[0] / opts.scale;
    sol.w_prime[i] = y[1] / opts.scale;
  };
  integrate_piecewise(make_system, x, cuts_between(r0, R, {&q}), grid, opts.rtol, opts.atol * opts.scale,
                      record);

  sol.phi.resize(n);
  sol.phi_prime.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const specfun::ScaledPair p = sol.scaled_phi(i);
    sol.phi[i] = p.value();
    sol.phi_prime[i] = p.deriv();
  }
  const specfun::ScaledPair end{x[0], lp1 / R * x[0] + x[1], sol.log_scale(R)};
  PhaseShift ps = match_free_basis(ell, R, end);
  ps.log_jost_magnitude -= std::log(opts.scale);
  ps.jost_magnitude = std::exp(ps.log_jost_magnitude);
  sol.delta = ps.delta;
  sol.jost_magnitude = ps.jost_magnitude;
  sol.log_jost_magnitude = ps.log_jost_magnitude;
  return sol;
}

PhaseShift phase_shift(const Potential& q, int ell, const RadialOptions& opts) {
  RadialOptions o = opts;
  o.grid_points = 0;
  o.extra_radii.clear();
  const RadialSolution sol = regular_solution(q, ell, o);
  return {sol.delta, sol.jost_magnitude, sol.log_jost_magnitude};
}

std::complex<double> amplitude_coefficient(double delta) {
  return 4.0 * std::numbers::pi * std::polar(1.0, delta) * std::sin(delta);
}

std::complex<double> amplitude_coefficient_exponential(double delta) {
  const std::complex<double> i(0.0, 1.0);
  return 2.0 * std::numbers::pi * i * (1.0 - std::polar(1.0, 2.0 * delta));
}

void PhaseShiftTable::add(const Entry& e) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e.ell,
                             [](const Entry& x, int l) { return x.ell < l; });
  if (it != entries_.end() && it->ell == e.ell)
    throw ValidationError(fmt::format("duplicate phase shift for l = {}", e.ell));
  entries_.insert(it, e);
}

const PhaseShiftTable::Entry& PhaseShiftTable::at(int ell) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), ell,
                             [](const Entry& x, int l) { return x.ell < l; });
  if (it == entries_.end() || it->ell != ell)
    throw DomainError(fmt::format("phase shift table has no entry for l = {}", ell));
  return *it;
}

bool PhaseShiftTable::covers(int l_max) const {
  for (int l = 0; l <= l_max; ++l) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), l,
                               [](const Entry& x, int v) { return x.ell < v; });
    if (it == entries_.end() || it->ell != l) return false;
  }
  return true;
}

std::string PhaseShiftTable::to_csv() const {
  CsvTable csv({"ell", "delta", "jost_magnitude"});
  for (const Entry& e : entries_)
    csv.add_row(std::vector<std::string>{std::to_string(e.ell), format_double(e.delta),
                                         format_double(e.jost_magnitude)});
  return csv.str();
}

PhaseShiftTable phase_shift_table(const Potential& q, int l_max, const RadialOptions& opts,
                                  int threads) {
  if (l_max < 0) throw DomainError("l_max must be >= 0");
  std::vector<PhaseShift> shifts(l_max + 1);
  parallel_for(l_max + 1, threads, [&](int l) { shifts[l] = phase_shift(q, l, opts); });
  PhaseShiftTable table(q.id());
  for (int l = 0; l <= l_max; ++l) table.add({l, shifts[l].delta, shifts[l].jost_magnitude});
  return table;
}

AmplitudeResult partial_wave_amplitude(const PhaseShiftTable& table, double cos_theta, int l_max) {
  if (l_max < 0) throw DomainError("l_max must be >= 0");
  if (!(std::abs(cos_theta) <= 1.0)) throw DomainError("cos_theta must lie in [-1, 1]");
  if (!table.covers(l_max))
    throw DomainError(fmt::format("phase shift table does not cover l = 0..{}", l_max));
  AmplitudeResult out;
  double pm = 0.0, p = 1.0;  // P_{l-1}, P_l
  for (int l = 0; l <= l_max; ++l) {
    if (l > 0) {
      const double next = l == 1 ? cos_theta : ((2.0 * l - 1.0) * cos_theta * p - (l - 1.0) * pm) / l;
      pm = p;
      p = next;
    }
    const double d = table.at(l).delta;
    out.value += amplitude_coefficient(d) * ((2.0 * l + 1.0) / (4.0 * std::numbers::pi)) * p;
    if (l == l_max) out.tail_estimate = (2.0 * l + 1.0) * std::abs(std::sin(d));
  }
  return out;
}

OverlapIntegral overlap_integral(const Potential& q1, const Potential& q2, const Potential& weight,
                                 int ell, const RadialOptions& opts) {
  check_ell(ell);
  const double R = std::max({q1.support(), q2.support(), weight.support(), opts.r_end});
  const auto c1 = frobenius(ell, q1.segments().front());
  const auto c2 = frobenius(ell, q2.segments().front());
  double r0 = std::min(start_radius(ell, q1, c1[2]), start_radius(ell, q2, c2[2]));
  r0 = std::min(r0, 0.5 * weight.segments().front().hi);

  const double lp1 = ell + 1.0;
  const double power = 2.0 * ell + 2.0;
  const Segment w0 = weight.segments().front();
  auto [a1, b1] = frobenius_eval(c1, r0);
  auto [a2, b2] = frobenius_eval(c2, r0);
  const double ratio = std::pow(r0 / R, power);
  const double j0 = ratio * r0 * (w0.alpha / (power + 1.0) + w0.beta * r0 / (power + 2.0));
  State5 x{a1, b1, a2, b2, j0};

  auto make_system = [&](double mid) {
    const Segment s1 = segment_at(q1, mid);
    const Segment s2 = segment_at(q2, mid);
    const Segment sw = segment_at(weight, mid);
    return [s1, s2, sw, lp1, power, R](const State5& y, State5& dy, double r) {
      dy[0] = y[1];
      dy[1] = (s1.at(r) - 1.0) * y[0] - 2.0 * lp1 / r * y[1];
      dy[2] = y[3];
      dy[3] = (s2.at(r) - 1.0) * y[2] - 2.0 * lp1 / r * y[3];
      dy[4] = sw.at(r) * std::pow(r / R, power) * y[0] * y[2];
    };
  };
  integrate_piecewise(make_system, x, cuts_between(r0, R, {&q1, &q2, &weight}), {}, opts.rtol,
                      opts.atol, [](std::size_t, const State5&) {});

  OverlapIntegral out;
  out.radius = R;
  out.log_scale = 2.0 * (lp1 * std::log(R) - specfun::log_odd_double_factorial(ell));
  out.scaled_value = x[4];
  out.scaled_boundary = x[1] * x[2] - x[0] * x[3];
  out.value = out.scaled_value * std::exp(out.log_scale);
  out.boundary_term = out.scaled_boundary * std::exp(out.log_scale);
  return out;
}

}  // namespace scatlab
