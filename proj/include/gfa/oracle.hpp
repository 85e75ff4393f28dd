#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gfa/aggregate.hpp"
#include "gfa/complexity.hpp"
#include "gfa/feature_map.hpp"
#include "gfa/graph.hpp"

namespace gfa::oracle {

/// Brute-force reference implementations used by tests and the bench
/// subcommand. Everything here is a naive nested-loop transcription that
/// shares data types with the main path but none of its code, so agreement
/// between the two is evidence, not tautology.

/// Positions of the k largest values; every value tied with the k-th
/// largest is included, so the result is a valid threshold set. Ascending.
std::vector<int> topk(std::span<const float> sims, int k);

/// Naive 3x3 convolution with replicate padding.
gradient_maps sobel(const feature_map& f);
std::vector<double> rms_score(const feature_map& f, pooling_mode pooling);

/// Full aggregation block re-derived from scratch: candidate membership by
/// whole-image predicate scan, naive scoring/budgeting/bisection/softmax,
/// per-neighbor projection. Scoring supports none and sobel.
feature_map aggregate_block(const feature_map& f, const gfa_config& cfg,
                            const std::vector<projection_weights>& pass_weights);

struct edge_totals {
    std::int64_t sum_degrees = 0;     // realized edges
    std::int64_t sum_candidates = 0;  // similarity evaluations implied
    double budget_ratio = 0.0;        // edges / (N * avg_degree)
    double capacity_ratio = 0.0;      // candidates / (N * (window^2 + grid^2))
};

edge_totals count_edges(const directed_graph& g, const std::vector<candidate_set>& candidates,
                        int avg_degree, int window, int grid);

struct report {
    std::string case_id;
    double max_abs_deviation = 0.0;
    bool passed = false;
    std::int64_t edges = 0;
    std::uint64_t sim_evaluations = 0;
};

/// Elementwise comparison helper for map-vs-map checks.
double max_abs_deviation(const feature_map& a, const feature_map& b);

/// Runs the main-path block and the naive reference on the same inputs and
/// reports how far apart they land, plus the main path's edge and
/// similarity-evaluation totals.
report compare_block(const std::string& case_id, const feature_map& f, const gfa_config& cfg,
                     const std::vector<projection_weights>& pass_weights, double tolerance);

}  // namespace gfa::oracle
