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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "scatlab/error.hpp"
#include "scatlab/quadrature.hpp"
#include "scatlab/radial.hpp"

using namespace scatlab;

namespace {

Potential well(double q0, double a = 1.0) { return Potential::piecewise(a, {{0.0, a, q0}}); }

// mpmath, 40 digits: exact square-well phase shifts at a = 1.
struct WellRef {
  double q0;
  double delta[3];
};
constexpr WellRef kWells[] = {
    {-1.0, {0.3511299177452372984, 0.021865875159001931813, 0.00059769701598666673479}},
    {-0.5, {0.15495452619562777501, 0.010236605986418184851, 0.00029120191383004865445}},
    {0.5, {-0.12048901770170671663, -0.0090848207597913280241, -0.00027709634542094767945}},
    {-1.1, {0.39544096328235860853, 0.024384823982221873117, 0.00066094533598932335419}},
};

}  // namespace

TEST_CASE("free solution equals u") {
  const Potential q = Potential::zero(1.0);
  const RadialSolution s = regular_solution(q, 3);
  for (std::size_t i = 0; i < s.grid.size(); ++i)
    CHECK(std::abs(s.phi[i] / specfun::riccati_bessel(3, s.grid[i]) - 1.0) < 1e-8);
}

TEST_CASE("free phase shifts vanish") {
  const Potential q = Potential::zero(1.0);
  for (int ell = 0; ell <= 30; ++ell) {
    const PhaseShift p = phase_shift(q, ell);
    CHECK(std::abs(p.delta) <= 1e-10);
    CHECK(std::abs(p.jost_magnitude - 1.0) <= 1e-10);
  }
}

TEST_CASE("square well closed-form solution") {
  for (double q0 : {-1.0, 0.5}) {
    const double kappa = std::sqrt(1.0 - q0);
    const RadialSolution s = regular_solution(well(q0), 0);
    for (std::size_t i = 0; i < s.grid.size(); ++i)
      CHECK(std::abs(s.phi[i] - std::sin(kappa * s.grid[i]) / kappa) < 1e-8);
  }
}

TEST_CASE("small-r normalization and reality") {
  for (int ell : {0, 2, 10, 50}) {
    const RadialSolution s = regular_solution(well(-1.0), ell);
    const double r0 = s.grid.front();
    const double lead = std::exp((ell + 1) * std::log(r0) - specfun::log_odd_double_factorial(ell));
    const specfun::ScaledPair p = s.scaled_phi(0);
    CHECK(std::abs(std::exp(std::log(p.mantissa) + p.log_scale) / lead - 1.0) < 1e-6);
    for (double v : s.phi) CHECK(std::isfinite(v));
    CHECK(s.delta >= -std::numbers::pi);
    CHECK(s.delta < std::numbers::pi);
    CHECK(s.jost_magnitude > 0.0);
    for (std::size_t i = 1; i < s.grid.size(); ++i) CHECK(s.grid[i] > s.grid[i - 1]);
  }
}

TEST_CASE("ode residual by finite differences") {
  const Potential q = Potential::piecewise(2.0, {{0.0, 0.7, -1.0}, {0.7, 2.0, 0.5}});
  for (int ell : {0, 1, 4}) {
    RadialOptions opts;
    opts.grid_points = 2001;
    const RadialSolution s = regular_solution(q, ell, opts);
    double worst = 0.0;
    // Uniform stencils only; the start radius breaks the spacing.
    for (std::size_t i = 2; i + 1 < s.grid.size(); ++i) {
      const double r = s.grid[i];
      const double hl = r - s.grid[i - 1], hr = s.grid[i + 1] - r;
      if (std::abs(r - 0.7) < 2 * std::max(hl, hr)) continue;
      const double d2 = 2.0 * (hl * s.phi[i + 1] - (hl + hr) * s.phi[i] + hr * s.phi[i - 1]) /
                        (hl * hr * (hl + hr));
      const double res = d2 + s.phi[i] - ell * (ell + 1) * s.phi[i] / (r * r) - q(r) * s.phi[i];
      worst = std::max(worst, std::abs(res));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("square-well phase shifts against exact values") {
  for (const WellRef& w : kWells)
    for (int ell = 0; ell < 3; ++ell) {
      CAPTURE(w.q0);
      CAPTURE(ell);
      CHECK(std::abs(phase_shift(well(w.q0), ell).delta - w.delta[ell]) < 1e-10);
    }
  const double closed = std::atan(std::tan(std::sqrt(2.0)) / std::sqrt(2.0)) - 1.0;
  CHECK(std::abs(phase_shift(well(-1.0), 0).delta - reduce_phase(closed)) < 1e-10);
}

TEST_CASE("sign law for weak potentials") {
  CHECK(phase_shift(well(-0.01), 0).delta > 0.0);
  CHECK(phase_shift(well(0.01), 0).delta < 0.0);
}

TEST_CASE("scale invariance of the matching") {
  const Potential q = well(-1.0);
  RadialOptions big;
  big.scale = 1e100;
  RadialOptions small;
  small.scale = 1e-100;
  for (int ell : {0, 5}) {
    const PhaseShift p = phase_shift(q, ell);
    CHECK(std::abs(phase_shift(q, ell, big).delta - p.delta) < 1e-12);
    CHECK(std::abs(phase_shift(q, ell, small).delta - p.delta) < 1e-12);
    CHECK(phase_shift(q, ell, big).jost_magnitude == doctest::Approx(p.jost_magnitude).epsilon(1e-12));
  }
}

TEST_CASE("integral identity for |F| sin delta") {
  const Potential cat[] = {well(-1.0), well(0.5),
                           Potential::piecewise(2.0, {{0.0, 0.7, -1.0}, {0.7, 2.0, 0.5}})};
  for (const Potential& q : cat)
    for (int ell = 0; ell <= 10; ++ell) {
      RadialOptions opts;
      const PhaseShift ps = phase_shift(q, ell);
      // phi is sampled exactly at the quadrature nodes.
      std::vector<double> nodes;
      std::vector<double> weights;
      std::vector<double> breaks = q.breakpoints();
      double lo = 0.0;
      for (double hi : breaks) {
        const quad::Rule& g = quad::gauss_legendre(48);
        for (std::size_t k = 0; k < g.x.size(); ++k) {
          nodes.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[k]);
          weights.push_back(0.5 * (hi - lo) * g.w[k]);
        }
        lo = hi;
      }
      opts.extra_radii = nodes;
      const RadialSolution s = regular_solution(q, ell, opts);
      double integral = 0.0;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto it = std::lower_bound(s.grid.begin(), s.grid.end(), nodes[k]);
        const std::size_t i = static_cast<std::size_t>(it - s.grid.begin());
        const specfun::ScaledPair p = s.scaled_phi(i);
        const specfun::ScaledPair u = specfun::riccati_bessel_scaled(ell, nodes[k]);
        integral += weights[k] * q(nodes[k]) * p.mantissa * u.mantissa * std::exp(p.log_scale + u.log_scale);
      }
      const double lhs = ps.jost_magnitude * std::sin(ps.delta);
      CAPTURE(ell);
      CHECK(std::abs(lhs + integral) <= 1e-6 * std::max(std::abs(lhs), 1e-300) + 1e-300);
    }
}

TEST_CASE("amplitude coefficients") {
  CHECK(std::abs(amplitude_coefficient(0.0)) == 0.0);
  const auto half = amplitude_coefficient(std::numbers::pi / 2);
  CHECK(std::abs(half - std::complex<double>(0.0, 4 * std::numbers::pi)) < 1e-14);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 100; ++k) {
    const double d = u(rng);
    CHECK(std::abs(amplitude_coefficient(d) - amplitude_coefficient_exponential(d)) < 1e-14);
  }
}

TEST_CASE("phase shift table and amplitude") {
  PhaseShiftTable zero("z");
  for (int ell = 0; ell <= 5; ++ell) zero.add({ell, 0.0, 1.0});
  CHECK(std::abs(partial_wave_amplitude(zero, 0.3, 5).value) == 0.0);
  CHECK_THROWS_AS(zero.add({2, 0.1, 1.0}), ValidationError);
  CHECK_THROWS_AS(partial_wave_amplitude(zero, 0.3, 6), DomainError);

  PhaseShiftTable single("s");
  single.add({0, 0.4, 1.0});
  single.add({1, 0.0, 1.0});
  const auto a0 = amplitude_coefficient(0.4) / (4 * std::numbers::pi);
  for (double c : {-1.0, 0.0, 0.7})
    CHECK(std::abs(partial_wave_amplitude(single, c, 1).value - a0) < 1e-15);

  const PhaseShiftTable t = phase_shift_table(well(-1.0), 20, {}, 2);
  CHECK(t.covers(20));
  for (std::size_t i = 1; i < t.entries().size(); ++i) CHECK(t.entries()[i].ell > t.entries()[i - 1].ell);
  for (double c : {-0.9, 0.2, 1.0})
    CHECK(std::abs(partial_wave_amplitude(t, c, 20).value - partial_wave_amplitude(t, c, 10).value) < 1e-8);
}
