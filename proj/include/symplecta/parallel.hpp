#pragma once

#include <cstddef>
#include <functional>

namespace symplecta {

/// Worker count: SYMPLECTA_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(0), …, body(count − 1) on up to thread_count() threads. Results
/// must be written to per-index slots. If any call throws, the exception of
/// the lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace symplecta
