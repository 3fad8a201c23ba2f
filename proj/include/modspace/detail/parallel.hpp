#pragma once

#include <cstddef>
#include <functional>

namespace modspace::detail {

// Worker count: MODSPACE_THREADS when set and positive, otherwise the
// hardware concurrency (0 means auto).
std::size_t thread_count();

// Runs body(i) for i in [0, n) over a static partition.  Bodies must write only
// to slots owned by their index so results do not depend on scheduling.
// Nested calls from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace modspace::detail
