#pragma once

#include <cstddef>
#include <functional>

namespace lemniscate {

/// Worker count: LEMNISCATE_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count). Each index is handled exactly once;
/// callers write results into per-index slots so output order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lemniscate
