#pragma once

#include <cstddef>
#include <functional>

namespace qpsf {

// Worker count: QPSF_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads.
// Iterations must be independent; exceptions are rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qpsf
