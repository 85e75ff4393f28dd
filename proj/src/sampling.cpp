#include "gfa/sampling.hpp"

#include <algorithm>
#include <string>

#include "gfa/parallel.hpp"

namespace gfa {

std::vector<int> sample_local(int node, shape2 s, int window) {
    if (window < 1) {
        throw config_error("local window must be >= 1, got " + std::to_string(window));
    }
    if (window > 2 * std::max(s.h, s.w)) {
        throw config_error("local window " + std::to_string(window) +
                           " degenerates to the whole image for " + std::to_string(s.h) + "x" +
                           std::to_string(s.w));
    }
    const coord p = node_to_coord(node, s);
    const int lo = -(window / 2);
    const int hi = (window + 1) / 2 - 1;  // window cells per axis for interior nodes
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(window) * window);
    for (int du = lo; du <= hi; ++du) {
        const int u = p.u + du;
        if (u < 0 || u >= s.h) continue;
        for (int dv = lo; dv <= hi; ++dv) {
            const int v = p.v + dv;
            if (v < 0 || v >= s.w) continue;
            out.push_back(u * s.w + v);
        }
    }
    return out;  // (u, v) scan order is already ascending node order
}

std::vector<int> sample_global(int node, shape2 s, int grid) {
    if (grid < 1) {
        throw config_error("global grid must be >= 1, got " + std::to_string(grid));
    }
    if (grid > s.h || grid > s.w) {
        throw config_error("global grid " + std::to_string(grid) + " exceeds image side for " +
                           std::to_string(s.h) + "x" + std::to_string(s.w) +
                           " (stride would be zero)");
    }
    const int stride_h = s.h / grid;
    const int stride_w = s.w / grid;
    const coord p = node_to_coord(node, s);
    const int r = p.u % stride_h;
    const int c = p.v % stride_w;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(grid) * grid);
    for (int a = 0; a < grid; ++a) {
        const int u = r + a * stride_h;
        if (u >= s.h) break;  // non-divisible dims: lattice tail falls off the image
        for (int b = 0; b < grid; ++b) {
            const int v = c + b * stride_w;
            if (v >= s.w) break;
            out.push_back(u * s.w + v);
        }
    }
    return out;
}

candidate_set build_candidates(int node, shape2 s, int window, int grid, candidate_mode mode) {
    candidate_set cs;
    cs.owner = node;
    if (mode != candidate_mode::global_only) cs.local = sample_local(node, s, window);
    if (mode != candidate_mode::local_only) cs.global = sample_global(node, s, grid);

    cs.merged.reserve(cs.local.size() + cs.global.size());
    std::merge(cs.local.begin(), cs.local.end(), cs.global.begin(), cs.global.end(),
               std::back_inserter(cs.merged));
    cs.merged.erase(std::unique(cs.merged.begin(), cs.merged.end()), cs.merged.end());
    return cs;
}

std::vector<candidate_set> build_all_candidates(shape2 s, int window, int grid,
                                                candidate_mode mode, int threads) {
    // Validate once up front so worker threads cannot throw.
    build_candidates(0, s, window, grid, mode);
    std::vector<candidate_set> all(static_cast<std::size_t>(s.h) * s.w);
    parallel_for(0, s.h * s.w, threads,
                 [&](int i) { all[i] = build_candidates(i, s, window, grid, mode); });
    return all;
}

}  // namespace gfa
