#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace hypercx {

// Splits [0, count) into contiguous chunks, one worker thread per chunk.
// Each index must be processed independently of the others; with that
// discipline results are bitwise independent of the worker count.
inline void parallel_for(std::ptrdiff_t count, int jobs,
                         const std::function<void(std::ptrdiff_t)>& body) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count < 2) {
    for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
    return;
  }
  const int workers = static_cast<int>(std::min<std::ptrdiff_t>(jobs, count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  const std::ptrdiff_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::ptrdiff_t lo = w * chunk;
    const std::ptrdiff_t hi = std::min(count, lo + chunk);
    pool.emplace_back([lo, hi, &body] {
      for (std::ptrdiff_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace hypercx
