#pragma once

#include <vector>

#include "gfa/feature_map.hpp"

namespace gfa {

enum class candidate_mode { local_only, global_only, both };

/// Per-node candidate pool: a dense window around the node plus a sparse
/// stride-lattice mesh aligned with the node's residue. `merged` is the
/// deduplicated union, sorted ascending, and is what graph construction sees.
struct candidate_set {
    int owner = 0;
    std::vector<int> local;
    std::vector<int> global;
    std::vector<int> merged;

    int size() const { return static_cast<int>(merged.size()); }
};

/// In-bounds nodes of the window x window block around `node`, sorted
/// ascending. Even window sides use offsets [-window/2, window/2 - 1] so the
/// interior block has exactly window^2 cells; out-of-bounds offsets are
/// dropped, never padded or wrapped.
std::vector<int> sample_local(int node, shape2 s, int window);

/// In-bounds lattice nodes (r + a*stride_h, c + b*stride_w), a,b in [0, grid),
/// where (r, c) is the node's coordinate modulo the strides floor(H/grid),
/// floor(W/grid). Sorted ascending, at most grid^2 members.
std::vector<int> sample_global(int node, shape2 s, int grid);

candidate_set build_candidates(int node, shape2 s, int window, int grid, candidate_mode mode);

/// Candidate sets for every node, indexed by node. Pure per-node work.
std::vector<candidate_set> build_all_candidates(shape2 s, int window, int grid,
                                                candidate_mode mode, int threads = 1);

}  // namespace gfa
