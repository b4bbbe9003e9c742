#pragma once

#include <cstddef>
#include <functional>

namespace confspec {

// Worker count: hardware concurrency, capped by CONFSPEC_THREADS when set.
int worker_count();

// Calls body(i) for every i in [0, n). Work is split into contiguous blocks;
// callers write results into slot i so the outcome does not depend on the
// number of workers. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace confspec
