#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace hopfcx {

// Runs fn(i) for i in [0, n) on `workers` threads pulling indices from a
// shared counter. Callers write results into index-addressed slots, so the
// outcome is identical for any worker count.
template <class Fn>
void parallel_for(long n, int workers, Fn fn) {
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto body = [&] {
    for (;;) {
      long i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int count = std::min<long>(workers, n);
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
}

}  // namespace hopfcx
