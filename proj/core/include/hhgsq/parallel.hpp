#pragma once

#include <cstddef>
#include <functional>

namespace hhgsq {

/// Thread count used when a caller passes 0: HHGSQ_THREADS if set and
/// positive, otherwise std::thread::hardware_concurrency().
int default_thread_count();

/// Returns requested if positive, default_thread_count() otherwise.
int resolve_thread_count(int requested);

/// Runs body(i) for i in [0, n) on up to `threads` workers with static
/// interleaved scheduling. Results must be written to index-addressed storage
/// by the caller, so output is independent of scheduling. If any call throws,
/// the exception from the lowest index is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

} // namespace hhgsq
