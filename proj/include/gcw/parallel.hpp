#pragma once

#include <cstddef>
#include <functional>

namespace gcw {

/// Number of worker threads to use for `requested` (<= 0 means one per
/// hardware thread).
int resolve_threads(int requested);

/// Calls fn(i) for every i in [0, n) using up to `threads` workers with
/// dynamic scheduling. Callers write results into per-index slots, so the
/// outcome never depends on the thread count. The first exception thrown
/// by any call is rethrown after all workers have stopped.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace gcw
