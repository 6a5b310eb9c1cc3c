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

#include "scatlab/error.hpp"
#include "scatlab/quadrature.hpp"
#include "scatlab/specfun.hpp"

using namespace scatlab;
using namespace scatlab::specfun;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// mpmath, 40 digits (tests/oracles/compute_oracles.py).
struct UV {
  int ell;
  double r, u, v;
};
constexpr UV kRiccati[] = {
    {0, 0.5, 0.47942553860420300027, -0.87758256189037271612},
    {1, 2.0, 0.8707955499599832347, -0.7012240085521105019},
    {5, 1.0, 0.000092561158611258163567, -999.44034339223640949},
    {10, 7.5, 0.084448731864686916067, -6.198468353313369722},
    {30, 3.0, 3.2267025774669769326e-28, -1.5316019347288399828e+26},
    {3, 40.0, -0.77227785549918686027, 0.63824332896021536432},
};

}  // namespace

TEST_CASE("riccati functions against high-precision values") {
  for (const UV& c : kRiccati) {
    CAPTURE(c.ell);
    CAPTURE(c.r);
    CHECK(rel(riccati_bessel(c.ell, c.r), c.u) < 1e-12);
    CHECK(rel(riccati_neumann(c.ell, c.r), c.v) < 1e-12);
  }
}

TEST_CASE("elementary riccati values") {
  const double pi2 = std::numbers::pi / 2;
  CHECK(riccati_bessel(0, pi2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(riccati_neumann(0, pi2)) < 1e-12);
  CHECK(rel(riccati_bessel(2, 0.01), 1e-6 / 15.0 * (1.0 - 1e-4 / 14.0)) < 1e-10);
  CHECK(riccati_bessel(0, 1e-8) / 1e-8 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(riccati_neumann(1, 20.0) + std::cos(20.0 - pi2)) < 1.5 / 20.0);
  CHECK_THROWS_AS(riccati_bessel(0, 0.0), DomainError);
  CHECK_THROWS_AS(riccati_neumann(1, -1.0), DomainError);
}

TEST_CASE("wronskian of u and v is one") {
  for (int ell = 0; ell <= 10; ++ell)
    for (double r : {1.0, 5.0, 25.0}) {
      const double w = riccati_bessel(ell, r) * riccati_neumann_prime(ell, r) -
                       riccati_bessel_prime(ell, r) * riccati_neumann(ell, r);
      CHECK(std::abs(w - 1.0) < 1e-10);
    }
}

TEST_CASE("free equation residual by central differences") {
  const double h = 1e-3;
  for (int ell = 0; ell <= 10; ++ell)
    for (double r = 0.1; r <= 20.0; r += 0.37) {
      const double u = riccati_bessel(ell, r);
      const double upp = (riccati_bessel(ell, r + h) - 2 * u + riccati_bessel(ell, r - h)) / (h * h);
      CHECK(std::abs(upp + u - ell * (ell + 1) * u / (r * r)) < 1e-6 * std::max(1.0, std::abs(u)) + 1e-8);
    }
}

TEST_CASE("scaled riccati pair stays finite for large l") {
  const ScaledPair p = riccati_bessel_scaled(800, 2.0);
  CHECK(std::isfinite(p.mantissa));
  CHECK(std::isfinite(p.log_scale));
  CHECK(p.log_scale < -3000.0);
  const ScaledPair n = riccati_neumann_scaled(800, 2.0);
  CHECK(n.log_scale > 3000.0);
}

TEST_CASE("log gamma") {
  CHECK(std::abs(log_gamma({1.0, 0.0})) < 1e-15);
  CHECK(std::abs(log_gamma({0.5, 0.0}) - std::log(std::sqrt(std::numbers::pi))) < 1e-14);
  CHECK(std::abs(log_gamma({5.0, 0.0}) - std::log(24.0)) < 1e-14);
  struct Ref {
    std::complex<double> z, v;
  };
  const Ref refs[] = {
      {{2.5, 3.0}, {-1.4709546103488416913, 2.82261563826079945}},
      {{0.1, -7.0}, {-10.854877044420902517, -5.9875701533014403073}},
      {{20.0, 1.0}, {39.314259987890606077, 2.9709616680231353121}},
  };
  for (const Ref& r : refs) CHECK(std::abs(log_gamma(r.z) - r.v) < 1e-12 * std::abs(r.v));
  CHECK_THROWS_AS(log_gamma({0.0, 1.0}), DomainError);
}

TEST_CASE("legendre polynomials") {
  CHECK(legendre_poly(0, 0.3) == 1.0);
  CHECK(legendre_poly(1, 0.3) == doctest::Approx(0.3));
  CHECK(legendre_poly(2, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(legendre_poly(2, 1.5), DomainError);
  const quad::Rule& g = quad::gauss_legendre(32);
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; n <= 12; ++n) {
      double s = 0.0;
      for (std::size_t k = 0; k < g.x.size(); ++k) s += g.w[k] * legendre_poly(m, g.x[k]) * legendre_poly(n, g.x[k]);
      CHECK(std::abs(s - (m == n ? 2.0 / (2 * n + 1) : 0.0)) < 1e-10);
    }
}

TEST_CASE("double factorial logarithm") {
  CHECK(log_odd_double_factorial(0) == 0.0);
  CHECK(std::exp(log_odd_double_factorial(3)) == doctest::Approx(105.0));
  CHECK(log_odd_double_factorial(80) ==
        doctest::Approx(std::lgamma(162.0) - 80 * std::log(2.0) - std::lgamma(81.0)).epsilon(1e-14));
}

TEST_CASE("large-l asymptotic form") {
  const AsymptoticValue one = u_asymptotic(1, 1.0);
  CHECK(one.value == doctest::Approx(std::sqrt(0.5) * std::pow(std::exp(1.0) / 3, 1.5) / std::sqrt(3.0)));
  auto ratio = [](int ell, double r) {
    const ScaledPair u = riccati_bessel_scaled(ell, r);
    return std::exp(std::log(u.mantissa) + u.log_scale - u_asymptotic(ell, r).log_value);
  };
  CHECK(std::abs(ratio(100, 1.0) - 1.0) < 0.01);
  CHECK(std::abs(ratio(200, 0.5) - 1.0) < 0.005);
  for (double r : {0.5, 1.0}) {
    double prev = HUGE_VAL;
    for (int ell = 20; ell <= 200; ell += 20) {
      const double d = std::abs(ratio(ell, r) - 1.0);
      CHECK(d < prev);
      prev = d;
    }
  }
  const AsymptoticValue tiny = u_asymptotic(1000, 1e-3);
  CHECK(tiny.underflow);
  CHECK(tiny.value == 0.0);
  CHECK(std::isfinite(tiny.log_value));
}

TEST_CASE("angular index") {
  CHECK(AngularIndex::integer(3).as_int() == 3);
  CHECK_THROWS_AS(AngularIndex::integer(-1), DomainError);
  CHECK_THROWS_AS(AngularIndex::complex({-0.5, 1.0}), DomainError);
  CHECK_FALSE(AngularIndex::complex({0.5, 1.0}).is_integer());
}
