#pragma once

#include <cstddef>
#include <functional>

namespace qsl2r {

/// Number of worker threads, capped by the QSL2R_THREADS environment
/// variable when it is set to a positive integer.
int thread_count();

/// Run body(i) for i in [0, n) on the OpenMP thread pool. Each index owns
/// its output slot, so results are bitwise identical to the serial path.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Serial reference for parallel_for; kept for testing and benchmarking.
void serial_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qsl2r
