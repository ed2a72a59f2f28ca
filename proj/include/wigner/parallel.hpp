#pragma once

#include <cstddef>
#include <functional>

namespace wigner {

// Worker count for grid partitioning. WIGNER_THREADS caps it; 0, unset or
// unparsable means hardware concurrency.
unsigned worker_count();

// Runs fn(begin, end) over contiguous chunks of [0, n), one chunk per worker.
// Chunk boundaries depend only on n and the worker count, and callers must
// keep per-index results in preallocated slots so the final reduction order
// is fixed regardless of scheduling.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace wigner
