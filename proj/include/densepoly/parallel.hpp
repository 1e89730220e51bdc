#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace densepoly {

// Runs fn(i) for i in [0, count) across at most `threads` workers with a
// static block partition. Callers must ensure distinct indices touch disjoint
// state; the partition is deterministic, so results never depend on
// scheduling. threads <= 1 (or a single block) runs inline.
template <typename Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
  int workers = std::min(threads, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  int base = count / workers;
  int extra = count % workers;
  int begin = 0;
  for (int w = 0; w < workers; ++w) {
    int end = begin + base + (w < extra ? 1 : 0);
    pool.emplace_back([&fn, begin, end] {
      for (int i = begin; i < end; ++i) fn(i);
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace densepoly
