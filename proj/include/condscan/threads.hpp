#pragma once

// Thread pool helpers. CONDSCAN_THREADS caps the worker count; results
// must never depend on it, so parallel loops write into index-addressed
// slots and reductions happen in index order afterwards.

#include <cstddef>
#include <functional>

namespace condscan {

/// Effective worker count: min(hardware, CONDSCAN_THREADS if set), >= 1.
unsigned thread_count();

/// Runs fn(i) for i in [0, n) across workers. fn must only write to
/// state owned by index i.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace condscan
