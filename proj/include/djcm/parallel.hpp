#pragma once

#include <cstddef>
#include <functional>

namespace djcm {

// hardware_concurrency, capped by the DJCM_THREADS environment variable.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads.  Results must
// be written by index; the first exception thrown is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace djcm
