/// @file parallel.hpp
/// @brief Static block partition of an index range over std::thread workers.
#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace ppmhd {

/// Calls f(begin, end, worker) on contiguous chunks of [0, n). The partition
/// depends only on n and threads, so per-worker partial results combined in
/// worker order are deterministic.
template <class F>
void parallel_for(int n, int threads, F&& f) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    if (n > 0) f(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    const int b = static_cast<int>(static_cast<long long>(n) * w / threads);
    const int e = static_cast<int>(static_cast<long long>(n) * (w + 1) / threads);
    pool.emplace_back([&, b, e, w] {
      try {
        f(b, e, w);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ppmhd
