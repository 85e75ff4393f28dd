#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gfa/complexity.hpp"
#include "gfa/feature_map.hpp"
#include "gfa/graph.hpp"

namespace gfa {

/// Linear projection applied to neighbor features before mixing.
/// Row-major in_channels x out_channels; project(x) = W^T x.
struct projection_weights {
    int in_channels = 0;
    int out_channels = 0;
    std::vector<float> matrix;

    static projection_weights identity(int channels);
    /// Entries uniform in [-1/sqrt(in), 1/sqrt(in)), deterministic per seed.
    static projection_weights seeded(int in_channels, int out_channels, std::uint64_t seed);
    /// Reads a weight file decoded as a tensor: H = in, W = out, C must be 1.
    static projection_weights from_map(const feature_map& m);
};

enum class pass_order { global_then_local, local_then_global };

/// Hyperparameters of one aggregation block.
struct gfa_config {
    int window = 8;        // dense sampling side
    int grid = 16;         // sparse sampling side
    int avg_degree = 64;   // target mean in-degree
    int iterations = 5;    // bisection steps
    pooling_mode pooling = pooling_mode::rms;
    scoring_strategy strategy = scoring_strategy::sobel;
    pass_order order = pass_order::global_then_local;
    std::uint64_t seed = 0;
};

void validate(const gfa_config& cfg);

struct pass_stats {
    int block = 0;
    std::string mode;  // "global" or "local"
    double mean_degree = 0.0;
    double mean_abs_deviation = 0.0;
    std::int64_t edges_total = 0;
    std::uint64_t sim_evaluations = 0;
};

struct pipeline_result {
    feature_map output;
    std::vector<pass_stats> stats;
};

/// Stage = `blocks` identical blocks at `channels` width; the first pass of
/// the first block adapts the incoming width.
struct stage_spec {
    int blocks = 1;
    gfa_config config;
    int channels = 0;
};

/// Softmax of the similarities with max subtraction; sums to 1.
std::vector<double> attention_weights(std::span<const float> sims);

/// z_i = sum_j alpha_ij * project(x_j) over each node's neighbor list.
/// Pure aggregation: no residual, no normalization.
feature_map aggregate_pass(const feature_map& f, const directed_graph& g,
                           const projection_weights& w, int threads = 1);

/// One block: two passes in cfg.order, each re-scoring its own input,
/// budgeting, building the single-scale graph (global pass samples the
/// stride lattice, local pass the dense window) and aggregating. A residual
/// connection wraps each pass whose in/out widths match. pass_weights must
/// hold one projection per pass; empty derives both from cfg.seed.
feature_map gfa_block(const feature_map& f, const gfa_config& cfg,
                      std::vector<projection_weights> pass_weights = {},
                      std::vector<pass_stats>* stats = nullptr, int threads = 1);

/// Sequential stages of blocks; zero stages (or zero blocks) is identity.
pipeline_result run_pipeline(const feature_map& f, const std::vector<stage_spec>& stages,
                             int threads = 1);

}  // namespace gfa
