#pragma once

#include <cstddef>
#include <functional>

namespace isoperim {

/// Worker count: ISOPERIM_THREADS when set to a positive integer,
/// otherwise std::thread::hardware_concurrency().
std::size_t thread_count();

/// Calls body(i) for i in [0, n). Iterations are split into contiguous
/// blocks over thread_count() workers; callers write results into slot i so
/// the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace isoperim
