#pragma once

#include <cstddef>
#include <functional>

namespace frailhaz {

// Process-wide cap on worker threads used by parallel loops (simulation
// replications, Monte-Carlo draws).  0 means "auto" (hardware concurrency).
// The CLI wires the FRAILHAZ_THREADS environment variable to this.
void set_max_threads(unsigned n) noexcept;
unsigned max_threads() noexcept;           // resolved value, >= 1

// Runs fn(i) for i in [0, n).  Each index writes only to its own output slot
// and derives its own RNG substream, so the result is identical for any
// thread count, including 1.  Exceptions thrown by fn are rethrown (the first
// one by index order) after all workers finish.
void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace frailhaz
