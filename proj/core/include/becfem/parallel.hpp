#pragma once

#include <cstddef>
#include <functional>

namespace becfem
{

/// Number of worker threads; reads BECFEM_THREADS once, defaulting to the
/// hardware concurrency. set_worker_count overrides it process-wide.
std::size_t worker_count();
void set_worker_count(std::size_t n);

/// Run fn over [0, n) split into contiguous blocks, one per worker. Results
/// must be written to disjoint locations; any reduction happens afterwards
/// in index order so the outcome is independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace becfem
