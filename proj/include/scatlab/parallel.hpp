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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace scatlab {

/// Worker count from SCATLAB_THREADS, capped by the hardware; at least 1.
inline int thread_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  int n = static_cast<int>(hw);
  if (const char* env = std::getenv("SCATLAB_THREADS")) {
    try {
      n = std::stoi(env);
    } catch (...) {
      n = 1;
    }
  }
  return std::clamp(n, 1, static_cast<int>(std::max(hw, 1u)) * 4);
}

/// Calls f(i) for i in [0, n) on up to `threads` workers. Each index is
/// processed exactly once; the exception of the lowest failing index is rethrown.
template <class F>
void parallel_for(int n, int threads, F&& f) {
  if (n <= 0) return;
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&]() {
    for (int i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace scatlab
