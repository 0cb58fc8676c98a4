#pragma once

#include <cstddef>
#include <functional>

namespace hfp {

/// Thread budget for sweep loops: HFPQUAD_THREADS when set (minimum 1),
/// otherwise the hardware concurrency.
std::size_t thread_cap();

/// Runs body(i) for i in [0, count), possibly on several threads. Each index
/// is processed exactly once, so writers that fill slot i of a preallocated
/// vector produce output independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hfp
