// Deterministic fork-join over an index range. Results are written to
// caller-indexed slots, so output order never depends on scheduling.
#pragma once

#include <functional>

namespace qsdc {

// Runs fn(i) for i in [0, n) on `jobs` worker threads (jobs <= 0 selects the
// hardware thread count). fn must be safe to call concurrently for distinct i.
// Exceptions from workers are captured and the first one rethrown.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace qsdc
