#pragma once

#include <cstdint>
#include <vector>

#include "gfa/feature_map.hpp"
#include "gfa/sampling.hpp"

namespace gfa {

/// Cosine similarities of one node against its candidates, aligned pairwise.
struct similarity_row {
    int owner = 0;
    std::vector<int> candidates;
    std::vector<float> sims;
};

/// One bisection step as observed by tests: bracket, probe, realized count.
struct bisection_step {
    double lo;
    double hi;
    double threshold;
    int count;
};

struct threshold_result {
    double threshold = 0.0;
    std::vector<int> selected;  // node indices, ascending (candidate order)
    int degree = 0;
};

/// Sparse directed adjacency. Neighbor lists keep their similarity values so
/// aggregation does not recompute rows; thresholds make selection auditable:
/// j is a neighbor of i exactly when sim(i, j) >= thresholds[i].
struct directed_graph {
    std::vector<std::vector<int>> neighbors;
    std::vector<std::vector<float>> neighbor_sims;
    std::vector<double> thresholds;
    std::vector<int> degrees;
    std::uint64_t sim_evaluations = 0;

    std::int64_t total_edges() const;
};

struct graph_stats {
    double mean_degree = 0.0;
    std::vector<std::int64_t> degree_hist;  // 16 uniform bins over [min, max] degree
    double mean_abs_deviation = 0.0;
    std::int64_t edges_total = 0;
    std::vector<double> theta_quantiles;  // 0, .25, .5, .75, 1 of the thresholds
};

/// Cosine of the owner's feature against every candidate. Dot products and
/// norms accumulate in double, the stored value is float. Vectors with norm
/// below 1e-12 compare as 0.
similarity_row cosine_row(const feature_map& f, const candidate_set& cand);

/// Fixed-iteration bisection for a threshold whose selected count approaches
/// target_degree. Bracket starts at [min sim, max sim] with the mean as the
/// first probe; each iteration counts sims >= threshold, moves the bracket
/// (low up if the count overshoots, high down otherwise) and re-probes the
/// midpoint. The final set is everything >= the final threshold, ties
/// included. If rounding strands the threshold above every sim, it clamps to
/// the max so at least the argmax candidates survive; selection stays
/// threshold-consistent either way.
threshold_result bisect_threshold(const similarity_row& row, int target_degree, int iterations,
                                  std::vector<bisection_step>* trace = nullptr);

/// Per-node rows + bisection over the whole map. sim_evaluations counts every
/// cosine computed (= sum of candidate-set sizes).
directed_graph build_graph(const feature_map& f, const std::vector<candidate_set>& candidates,
                           const std::vector<int>& targets, int iterations, int threads = 1);

graph_stats summarize_graph(const directed_graph& g, const std::vector<int>& targets);

}  // namespace gfa
