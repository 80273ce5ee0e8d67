#pragma once

#include <cstddef>
#include <functional>

namespace lvar {

// Worker-pool size: the LVAR_WORKERS environment variable when set to a
// positive integer, otherwise the machine's logical core count.
std::size_t worker_count();

// Runs fn(i) for i in [0, n) on a bounded pool. Results must be written to
// pre-sized slots so ordering is independent of completion order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lvar
