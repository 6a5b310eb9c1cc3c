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

/** \file specfun.hpp
 *
 *  Special functions at wavenumber k = 1: Riccati-Bessel and Riccati-Neumann
 *  functions, complex log-Gamma, Legendre polynomials and the large-l form of
 *  the Riccati-Bessel function.
 *
 *  The Riccati functions of order l are
 *  \f[ u_l(r) = \sqrt{\pi r/2}\, J_{l+1/2}(r), \qquad
 *      v_l(r) = \sqrt{\pi r/2}\, Y_{l+1/2}(r), \f]
 *  so that u_l ~ sin(r - l pi/2), v_l ~ -cos(r - l pi/2) for large r and the
 *  Wronskian u_l v_l' - u_l' v_l equals 1.
 */

#pragma once

#include <complex>

namespace scatlab {

/// Angular-momentum index: a non-negative integer on the physical axis, or a
/// complex number in the right half-plane Re(l) > 0.
class AngularIndex {
 public:
  static AngularIndex integer(int ell);
  static AngularIndex complex(std::complex<double> ell);

  bool is_integer() const noexcept { return is_integer_; }
  int as_int() const;
  std::complex<double> value() const noexcept { return value_; }

 private:
  AngularIndex(std::complex<double> v, bool is_int) : value_(v), is_integer_(is_int) {}

  std::complex<double> value_;
  bool is_integer_;
};

namespace specfun {

/// A function value and its derivative sharing a common exponent:
/// f = mantissa * exp(log_scale), f' = derivative * exp(log_scale).
struct ScaledPair {
  double mantissa = 0.0;
  double derivative = 0.0;
  double log_scale = 0.0;

  double value() const;
  double deriv() const;
};

/// u_l(r); throws DomainError for r <= 0 or l < 0.
double riccati_bessel(int ell, double r);
/// u_l'(r).
double riccati_bessel_prime(int ell, double r);
/// u_l and u_l' in scaled form; never under- or overflows for l <= 1000.
ScaledPair riccati_bessel_scaled(int ell, double r);

/// v_l(r); throws DomainError for r <= 0 or l < 0.
double riccati_neumann(int ell, double r);
double riccati_neumann_prime(int ell, double r);
ScaledPair riccati_neumann_scaled(int ell, double r);

/// Principal branch of log Gamma(z), the analytic continuation that is real on
/// the positive axis. Requires Re z > 0.
std::complex<double> log_gamma(std::complex<double> z);

/// Legendre polynomial P_l(t) for |t| <= 1.
double legendre_poly(int ell, double t);

/// ln((2n+1)!!) for n >= 0, i.e. the log of 1*3*5*...*(2n+1).
double log_odd_double_factorial(int n);

/// Leading large-l form sqrt(r/2) (e r/(2l+1))^{(2l+1)/2} (2l+1)^{-1/2} of u_l.
struct AsymptoticValue {
  double value = 0.0;      ///< exact 0 when the value underflows
  double log_value = 0.0;  ///< natural log of the value, always finite
  bool underflow = false;
};

AsymptoticValue u_asymptotic(int ell, double r);

}  // namespace specfun
}  // namespace scatlab
