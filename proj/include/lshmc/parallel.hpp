#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace lshmc {

// Static partition of [0, n) across at most n_threads workers.  Tasks must be
// independent; results should be written to pre-sized slots so the combined
// output does not depend on scheduling.
inline void parallel_for(long n, int n_threads,
                         const std::function<void(long)>& fn) {
  n_threads = std::max(1, n_threads);
  if (n_threads == 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  int workers = static_cast<int>(std::min<long>(n_threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &fn] {
      for (long i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lshmc
