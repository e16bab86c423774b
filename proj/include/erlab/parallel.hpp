#pragma once

#include <cstddef>
#include <functional>

namespace erlab {

/// Worker count: ER_LAB_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Exceptions
/// thrown by body are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace erlab
