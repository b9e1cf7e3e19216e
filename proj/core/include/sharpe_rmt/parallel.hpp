#pragma once

#include <cstddef>
#include <functional>

namespace sharpe_rmt {

// threads <= 0 means std::thread::hardware_concurrency().
int effective_threads(int threads);

// Calls fn(i) for i in [0, count) on up to `threads` workers. If any call throws,
// the exception from the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace sharpe_rmt
