#pragma once

#include <cstddef>
#include <functional>

namespace skdv {

/// Worker budget: SKDV_THREADS if set to a positive integer, else the hardware count.
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads.  Work items are
/// claimed dynamically; callers store results by index so output order never
/// depends on scheduling.  The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace skdv
