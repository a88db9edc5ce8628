#ifndef TSAR_PARALLEL_HPP
#define TSAR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace tsar {

/// Worker-pool size: min(hardware_concurrency, TSTAR_THREADS) when the
/// environment variable is set, hardware_concurrency otherwise. At least 1.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Work items must be independent; any scheduling
/// must not affect results (callers write to disjoint slots). Exceptions from
/// workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace tsar

#endif
