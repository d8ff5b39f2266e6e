#pragma once

#include <cstddef>
#include <functional>

namespace fracasym {

/// Worker count used when a call passes threads <= 0 (defaults to hardware concurrency).
int default_threads();
void set_default_threads(int n);

/// Runs fn(i) for i in [0, n); results must be written to disjoint slots.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace fracasym
