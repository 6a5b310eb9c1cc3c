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

#include "scatlab/specfun.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "scatlab/error.hpp"

namespace scatlab {

AngularIndex AngularIndex::integer(int ell) {
  if (ell < 0) throw DomainError(fmt::format("angular index must be >= 0, got {}", ell));
  return AngularIndex(std::complex<double>(ell, 0.0), true);
}

AngularIndex AngularIndex::complex(std::complex<double> ell) {
  if (!(ell.real() > 0.0) || !std::isfinite(ell.imag()))
    throw DomainError(fmt::format("complex angular index needs Re(l) > 0, got {}{:+}i",
                                  ell.real(), ell.imag()));
  return AngularIndex(ell, false);
}

int AngularIndex::as_int() const {
  if (!is_integer_) throw DomainError("angular index is not an integer");
  return static_cast<int>(value_.real());
}

namespace specfun {

namespace {

constexpr double kRescale = 1e200;
const double kLogRescale = std::log(kRescale);
constexpr double kMillerRescale = 1e100;
const double kLogMillerRescale = std::log(kMillerRescale);

void check_args(int ell, double r) {
  if (ell < 0) throw DomainError(fmt::format("order must be >= 0, got {}", ell));
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError(fmt::format("radius must be positive and finite, got {}", r));
}

// Power series about the origin; all terms have the same sign up to the
// alternation, and r^2 <= 2l+3 keeps the ratio of consecutive terms below 1/2.
ScaledPair bessel_series(int ell, double r) {
  const double x = -0.5 * r * r;
  double term = 1.0;
  double sum = 1.0;
  double dsum = static_cast<double>(ell + 1);
  for (int k = 1; k < 200; ++k) {
    term *= x / (k * (2.0 * ell + 2.0 * k + 1.0));
    sum += term;
    dsum += term * (ell + 1 + 2 * k);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  ScaledPair out;
  out.mantissa = sum;
  out.derivative = dsum / r;
  out.log_scale = (ell + 1) * std::log(r) - log_odd_double_factorial(ell);
  return out;
}

ScaledPair bessel_forward(int ell, double r) {
  const double s = std::sin(r);
  const double c = std::cos(r);
  double um = s;              // u_0
  double u = s / r - c;       // u_1
  if (ell == 0) return {s, c, 0.0};
  for (int n = 1; n < ell; ++n) {
    const double up = (2.0 * n + 1.0) / r * u - um;
    um = u;
    u = up;
  }
  return {u, um - ell / r * u, 0.0};
}

// Miller's algorithm: the minimal solution of the three-term recurrence is
// generated downwards from a far starting index and normalised against u_0, u_1.
ScaledPair bessel_miller(int ell, double r) {
  const double top = std::max(static_cast<double>(ell), r);
  const int start = static_cast<int>(top + 30.0 + std::sqrt(50.0 * top));
  double fp = 0.0;  // f_{n+1}
  double f = 1.0;  // f_n
  double scale = 0.0;
  double f_ell = 0.0, f_ell1 = 0.0, scale_ell = 0.0;
  for (int n = start; n >= 1; --n) {
    if (n == ell) {
      f_ell = f;
      f_ell1 = fp;
      scale_ell = scale;
    }
    const double fm = (2.0 * n + 1.0) / r * f - fp;
    fp = f;
    f = fm;
    if (std::abs(f) > kMillerRescale) {
      f /= kMillerRescale;
      fp /= kMillerRescale;
      scale += kLogMillerRescale;
    }
  }
  if (ell == 0) {
    f_ell = f;
    f_ell1 = fp;
    scale_ell = scale;
  }
  // f now holds f_0, fp holds f_1.
  const double u0 = std::sin(r);
  const double u1 = std::sin(r) / r - std::cos(r);
  const double m = std::max(std::abs(f), std::abs(fp));
  const double f0 = f / m, f1 = fp / m;
  const double c = (f0 * u0 + f1 * u1) / (f0 * f0 + f1 * f1);
  ScaledPair out;
  out.mantissa = c * (f_ell / m);
  out.derivative = c * ((ell + 1.0) / r * f_ell - f_ell1) / m;
  out.log_scale = scale_ell - scale;
  return out;
}

}  // namespace

double ScaledPair::value() const { return mantissa * std::exp(log_scale); }
double ScaledPair::deriv() const { return derivative * std::exp(log_scale); }

ScaledPair riccati_bessel_scaled(int ell, double r) {
  check_args(ell, r);
  if (r * r <= 2.0 * ell + 3.0) return bessel_series(ell, r);
  if (ell <= r) return bessel_forward(ell, r);
  return bessel_miller(ell, r);
}

double riccati_bessel(int ell, double r) { return riccati_bessel_scaled(ell, r).value(); }
double riccati_bessel_prime(int ell, double r) { return riccati_bessel_scaled(ell, r).deriv(); }

ScaledPair riccati_neumann_scaled(int ell, double r) {
  check_args(ell, r);
  const double s = std::sin(r);
  const double c = std::cos(r);
  if (ell == 0) return {-c, s, 0.0};
  double vm = -c;
  double v = -c / r - s;
  double scale = 0.0;
  for (int n = 1; n < ell; ++n) {
    const double vp = (2.0 * n + 1.0) / r * v - vm;
    vm = v;
    v = vp;
    if (std::abs(v) > kRescale) {
      v /= kRescale;
      vm /= kRescale;
      scale += kLogRescale;
    }
  }
  return {v, vm - ell / r * v, scale};
}

double riccati_neumann(int ell, double r) { return riccati_neumann_scaled(ell, r).value(); }
double riccati_neumann_prime(int ell, double r) { return riccati_neumann_scaled(ell, r).deriv(); }

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0)) throw DomainError("log_gamma requires Re z > 0");
  // Recurrence up to Re z >= 15, then Stirling. Summing the individual logs keeps
  // the continuous branch (no reduction modulo 2 pi i).
  std::complex<double> shift(0.0, 0.0);
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static constexpr double kB[] = {1.0 / 6,        -1.0 / 30,    1.0 / 42,      -1.0 / 30,
                                  5.0 / 66,       -691.0 / 2730, 7.0 / 6,      -3617.0 / 510,
                                  43867.0 / 798,  -174611.0 / 330};
  const std::complex<double> zi = 1.0 / z;
  const std::complex<double> zi2 = zi * zi;
  std::complex<double> pw = zi;
  std::complex<double> series(0.0, 0.0);
  for (int k = 1; k <= 10; ++k) {
    series += kB[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= zi2;
  }
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (z - 0.5) * std::log(z) - z + half_log_2pi + series - shift;
}

double legendre_poly(int ell, double t) {
  if (ell < 0) throw DomainError("Legendre degree must be >= 0");
  if (!(std::abs(t) <= 1.0)) throw DomainError(fmt::format("Legendre argument {} outside [-1,1]", t));
  if (ell == 0) return 1.0;
  double pm = 1.0;
  double p = t;
  for (int n = 1; n < ell; ++n) {
    const double pp = ((2.0 * n + 1.0) * t * p - n * pm) / (n + 1.0);
    pm = p;
    p = pp;
  }
  return p;
}

double log_odd_double_factorial(int n) {
  if (n < 0) throw DomainError("double factorial index must be >= 0");
  // Compensated sum; the plain sum drifts by ~1e-13 at n = 100.
  double s = 0.0, comp = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double y = std::log(2.0 * k + 1.0) - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

AsymptoticValue u_asymptotic(int ell, double r) {
  check_args(ell, r);
  const double m = 2.0 * ell + 1.0;
  AsymptoticValue out;
  out.log_value = 0.5 * std::log(r / 2.0) + 0.5 * m * (1.0 + std::log(r / m)) - 0.5 * std::log(m);
  if (out.log_value < -745.0) {
    out.underflow = true;
    out.value = 0.0;
  } else {
    out.value = std::exp(out.log_value);
  }
  return out;
}

}  // namespace specfun
}  // namespace scatlab
