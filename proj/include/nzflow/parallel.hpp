#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace nzflow {

inline int default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(i) for i in [0, count) on up to `threads` workers. Work is split
// into fixed stripes by index, so any reduction the caller performs into
// per-index slots is independent of the worker count.
template <class F>
void parallel_for(long long count, int threads, F&& f) {
  if (count <= 0) return;
  threads = static_cast<int>(std::max<long long>(1, std::min<long long>(threads, count)));
  if (threads == 1) {
    for (long long i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([t, threads, count, &f] {
      for (long long i = t; i < count; i += threads) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace nzflow
