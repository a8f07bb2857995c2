#pragma once

#include <functional>

namespace subwick {

/// Worker count for independent trial/restart loops, read from the
/// SUBWICK_THREADS environment variable (default 1).
int configured_threads();

/// Runs fn(0..count-1); indices may execute on several threads but results
/// are always keyed by index, so outputs do not depend on the thread count.
void parallel_for_index(int count, const std::function<void(int)>& fn);

}  // namespace subwick
