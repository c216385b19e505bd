#pragma once

#include <cstdint>
#include <functional>

namespace sbl {

/// Runs fn(i) for i in [0, n) on a small thread pool. Work items must write
/// only to their own index slot; aggregation stays with the caller so
/// results cannot depend on scheduling. The first exception thrown by any
/// item is rethrown after all threads join.
///
/// threads == 0 picks the hardware concurrency (respecting the SBL_THREADS
/// environment variable when set); threads == 1 runs inline.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn, int threads = 0);

int effective_thread_count(int requested);

}  // namespace sbl
