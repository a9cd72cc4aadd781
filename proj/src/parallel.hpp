#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace hgc::detail {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Callers write results
// into slot i, so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  const int workers = std::max(1, std::min(jobs, n));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < n; i = next++) fn(i);
  };
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

}  // namespace hgc::detail
