// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace superyang {

// Worker count from SUPERYANG_WORKERS; 1 when unset or invalid.
inline int workers_from_env() {
  const char* s = std::getenv("SUPERYANG_WORKERS");
  if (!s || !*s) return 1;
  try {
    int n = std::stoi(s);
    return std::clamp(n, 1, 256);
  } catch (const std::exception&) {
    return 1;
  }
}

// Run job(k) for k in [0, n) on up to `workers` threads.  Results are written
// by index, so the output order does not depend on scheduling.
template <class R>
std::vector<R> parallel_map(std::size_t n, const std::function<R(std::size_t)>& job, int workers) {
  std::vector<R> out(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) out[k] = job(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        out[k] = job(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (int w = 0; w < std::min<int>(workers, static_cast<int>(n)); ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace superyang
