#pragma once

#include <functional>

namespace gfa {

/// Runs body(i) for i in [begin, end) over up to `threads` workers, each
/// owning a contiguous chunk. Callers write only to slot i, so worker
/// scheduling cannot change results.
void parallel_for(int begin, int end, int threads, const std::function<void(int)>& body);

}  // namespace gfa
