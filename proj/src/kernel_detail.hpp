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

// Shared between the kernel solver and its verification routines.

#pragma once

#include <cstddef>
#include <vector>

#include "scatlab/kernel.hpp"

namespace scatlab::detail {

/// Q(xi_i, eta_j) with the jump-corrected potential on each diagonal.
class NodeCoefficients {
 public:
  explicit NodeCoefficients(const KernelGrid& kg);
  double operator()(int i, int j) const {
    return 0.25 * (exp_sig_[i + j] * (1.0 - q_diag_[i + j]) - exp_sig_[i] * exp_meta_[j]);
  }

 private:
  std::vector<double> q_diag_;
  std::vector<double> exp_sig_;
  std::vector<double> exp_meta_;
};

inline std::size_t flat(const KernelGrid& kg, int i, int j) {
  return static_cast<std::size_t>(i) * (kg.n_eta() + 1) + j;
}

/// The product-trapezoid double integral of Q L over (-inf, xi_i] x [0, eta_j]
/// for the values currently stored in kg; NaN outside the computed region.
std::vector<double> volterra_term(const KernelGrid& kg);

}  // namespace scatlab::detail
