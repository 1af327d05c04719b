#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace axivisc {

/// Worker count: hardware concurrency, capped by AXIVISC_THREADS when set.
int worker_count();

/// Runs fn(k) for k in [begin, end) over contiguous blocks, one per worker.
/// Each index is visited by exactly one thread, so results that depend only on
/// k are independent of the worker count.
template <class Fn>
void parallel_for(int begin, int end, Fn&& fn) {
  const int n = end - begin;
  if (n <= 0) return;
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int k = begin; k < end; ++k) fn(k);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      const int lo = begin + static_cast<int>(static_cast<long>(n) * w / workers);
      const int hi = begin + static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
      pool.emplace_back([&, lo, hi, w] {
        try {
          for (int k = lo; k < hi; ++k) fn(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace axivisc
