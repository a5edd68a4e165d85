#pragma once

#include <cstddef>
#include <functional>

namespace freereg {

// Worker count: FREEREG_THREADS if set (clamped to >= 1), else the hardware
// concurrency.  Read once per process.
int worker_count();

// Runs fn over [0, n) split into one contiguous block per worker.  Callers
// must write results into per-index slots; reductions happen after the join,
// in index order, so results never depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace freereg
