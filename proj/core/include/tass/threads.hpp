#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace tass {

/// Worker cap from TASS_THREADS, else the hardware concurrency (at least 1).
unsigned default_thread_count() noexcept;

/// Calls fn(worker, begin, end) on `workers` contiguous slices of [0, n)
/// and joins. Runs inline when one worker suffices.
template <class Fn>
void parallel_slices(std::size_t n, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1)));
  if (workers == 1) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t step = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * step);
    const std::size_t end = std::min(n, begin + step);
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
}

} // namespace tass
