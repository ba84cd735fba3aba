#pragma once

#include <cstddef>
#include <functional>

namespace radplap {

/// Worker budget: RADIAL_PLAP_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned thread_budget();

/// Runs fn(0..n-1) on up to `threads` workers (0 means thread_budget()).
/// Results must be written by index so the outcome does not depend on
/// scheduling. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace radplap
