#pragma once

#include <cstddef>
#include <functional>

namespace gmax {

// Worker count used when a caller passes 0.
unsigned default_workers() noexcept;

// Runs task(i) for every i in [0, count) on up to `workers` threads. Threads
// claim indices from a shared counter, so idle workers pick up whatever is
// left. Tasks must write only to their own output slot; callers reduce in index
// order afterwards, which keeps results independent of the worker count. The
// first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& task);

}  // namespace gmax
