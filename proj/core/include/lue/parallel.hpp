#pragma once

#include <cstddef>
#include <functional>

namespace lue {

// Worker count: hardware concurrency capped by LUE_LSS_THREADS when set.
unsigned worker_count();

// Runs body(begin, end) over a static partition of [0, count). Chunks are
// contiguous and assigned in order, so callers that write per-index results
// and reduce afterwards stay deterministic regardless of thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace lue
