#pragma once

#include <cstddef>
#include <functional>

namespace gadgetforge {

// Worker count: GADGETFORGE_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(begin, end) over contiguous chunks of [0, count) on up to `workers`
// threads (0 = worker_count()). Callers must combine results in an
// order-independent way.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace gadgetforge
