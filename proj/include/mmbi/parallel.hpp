#pragma once

#include <cstddef>
#include <functional>

namespace mmbi {

/// Worker count: MMBI_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned default_thread_count();

/// Calls body(i) for every i in [0, count) on up to `threads` workers
/// (0 = default_thread_count()). The first exception thrown by any body is
/// rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace mmbi
