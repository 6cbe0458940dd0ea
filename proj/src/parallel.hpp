#pragma once

#include <cstddef>
#include <functional>

namespace qolct::detail {

/// Worker count: hardware concurrency, capped by QOLCT_THREADS when set.
unsigned worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Each index is
/// handled by exactly one call, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace qolct::detail
