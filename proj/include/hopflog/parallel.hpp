#pragma once

#include <cstddef>
#include <functional>

namespace hopflog {

// Worker count: HOPFLOG_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Calls body(i) for i in [0, count) on up to worker_count() threads. Items are
// claimed dynamically; callers write results into per-item slots so the
// outcome does not depend on scheduling. The first exception thrown by any
// item is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned workers = 0);

}  // namespace hopflog
