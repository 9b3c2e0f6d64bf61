#pragma once

#include <cstddef>
#include <functional>

namespace randten {

/// Worker count: RANDTEN_THREADS if set, otherwise the hardware count.
/// Thread count never affects results; every parallel loop writes
/// index-addressed slots and reduces in index order.
std::size_t thread_count();

/// Run fn(0..n-1), possibly across threads. fn(i) must depend only on i
/// (not on execution order) and must write only to slot i of its output.
/// Nested calls run serially on the calling worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace randten
