#pragma once

#include <cstddef>
#include <functional>

namespace bgeom {

/// Worker count: BANACH_GEOM_THREADS if set and positive, else the hardware
/// concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any call is rethrown after all workers stop. Calls
/// made from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bgeom
