#pragma once

#include <cstddef>
#include <functional>

namespace mfa {

// Worker count used by parallel_for. Defaults to hardware_concurrency.
unsigned worker_threads();
void set_worker_threads(unsigned n);

// Runs fn(i) for every i in [0, n) across the worker pool. Callers write
// results into index-addressed slots and never share mutable state, so the
// outcome is identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mfa
