#pragma once

#include <cstddef>
#include <functional>

namespace hiplab {

// Worker count from HIPLAB_THREADS, else hardware concurrency (at least 1).
std::size_t default_workers();

// Runs body(i) for every i in [0, n) on up to `workers` threads. Each index is
// visited exactly once; callers write results by index so the outcome does not
// depend on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body);

}  // namespace hiplab
