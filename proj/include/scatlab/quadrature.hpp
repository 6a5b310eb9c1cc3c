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

/** \file quadrature.hpp
 *
 *  Gauss-Legendre rules and thin adaptive wrappers over Boost's Gauss-Kronrod
 *  integrator that split the range at supplied breakpoints.
 */

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace scatlab::quad {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Cached and thread-safe; n >= 1.
const Rule& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre on [lo, hi].
template <class F>
auto gl_integrate(F&& f, double lo, double hi, int n) {
  const Rule& rule = gauss_legendre(n);
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  decltype(f(c)) sum{};
  for (std::size_t k = 0; k < rule.x.size(); ++k) sum += rule.w[k] * f(c + h * rule.x[k]);
  return sum * h;
}

template <class T>
struct Result {
  T value{};
  double error = 0.0;
};

/// Adaptive 31-point Gauss-Kronrod on [lo, hi].
template <class F>
auto integrate(F&& f, double lo, double hi, double rtol = 1e-12, unsigned max_depth = 18) {
  using T = decltype(f(lo));
  Result<T> out;
  if (!(hi > lo)) return out;
  double err = 0.0;
  out.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, max_depth,
                                                                            rtol, &err);
  out.error = err;
  return out;
}

/// Adaptive integration over [lo, hi] split at every breakpoint inside it.
template <class F>
auto integrate_split(F&& f, double lo, double hi, const std::vector<double>& breaks,
                     double rtol = 1e-12) {
  using T = decltype(f(lo));
  Result<T> out;
  double a = lo;
  auto piece = [&](double b) {
    if (b > a) {
      const auto r = integrate(f, a, b, rtol);
      out.value += r.value;
      out.error += r.error;
      a = b;
    }
  };
  for (double b : breaks)
    if (b > lo && b < hi) piece(b);
  piece(hi);
  return out;
}

}  // namespace scatlab::quad
