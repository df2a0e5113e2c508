#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace polyszem {

/// Runs fn(i) for i in [0, n).  Each index writes only its own result slot,
/// so the outcome is independent of the thread count.
template <class F>
void parallel_for(long long n, int threads, F&& fn) {
  if (threads <= 1 || n <= 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  int workers = static_cast<int>(std::min<long long>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([=, &fn] {
      for (long long i = t; i < n; i += workers) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace polyszem
