#pragma once

#include <cstddef>
#include <functional>

namespace testspace {

// Worker count used when an operation is given 0 threads. Initialized from the
// TESTSPACE_THREADS environment variable, else hardware concurrency.
unsigned default_threads();
void set_default_threads(unsigned threads);

// Calls body(i) for i in [0, n), splitting the range into contiguous chunks
// across up to `threads` workers. Results must be written to per-index slots;
// callers reduce afterwards in index order so output does not depend on the
// thread count.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace testspace
