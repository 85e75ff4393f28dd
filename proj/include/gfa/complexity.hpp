#pragma once

#include <vector>

#include "gfa/feature_map.hpp"

namespace gfa {

enum class pooling_mode { rms, mean };

enum class scoring_strategy { none, sobel, rescaling_residual, local_entropy };

/// How to turn a feature map into per-node degree targets.
struct scoring_config {
    scoring_strategy strategy = scoring_strategy::sobel;
    pooling_mode pooling = pooling_mode::rms;
    int avg_degree = 64;
};

/// Per-node budgeting output: raw scores, normalized weights (sum 1), real
/// quotas (sum N * avg_degree) and the clipped integer target degrees.
struct complexity_scores {
    std::vector<double> scores;
    std::vector<double> weights;
    std::vector<double> quotas;
    std::vector<int> targets;
};

/// Signed per-channel 3x3 edge responses; horizontal (sx) and vertical (sy).
struct gradient_maps {
    feature_map sx;
    feature_map sy;
};

/// 3x3 Sobel responses per channel with replicate padding at the borders,
/// so every pixel gets a score and frame pixels are not inflated by an
/// implicit zero background.
gradient_maps sobel_gradients(const feature_map& f);

/// Cross-channel gradient-magnitude score per node.
/// rms pooling: sqrt(mean_c(sx^2 + sy^2)); mean pooling: mean_c |grad_c|.
std::vector<double> rms_g_score(const feature_map& f, pooling_mode pooling);

/// Baseline complexity scores kept for ablation configurations.
/// rescaling_residual: channel-pooled magnitude of f - upsample(downsample(f))
/// with 2x average-pool down and nearest-neighbor up.
/// local_entropy: Shannon entropy (bits) of the 8-bin histogram of the
/// channel-pooled values in each pixel's replicate-padded 3x3 neighborhood.
/// Both are reconstructions of commonly used proxies, not canonical formulas.
std::vector<double> alt_scores(const feature_map& f, scoring_strategy strategy,
                               pooling_mode pooling);

/// Dispatch: none -> all-zero scores (budgeting then falls back to uniform).
std::vector<double> compute_scores(const feature_map& f, scoring_strategy strategy,
                                   pooling_mode pooling);

/// Splits the edge budget B = N * avg_degree into per-node quotas
/// proportional to the scores and clips rounded quotas into [1, n_i].
/// All-zero score vectors fall back to uniform weights 1/N. Rounding is
/// half-away-from-zero.
complexity_scores allocate_quotas(const std::vector<double>& scores, int avg_degree,
                                  const std::vector<int>& candidate_sizes);

/// compute_scores + allocate_quotas in one step.
complexity_scores score_and_budget(const feature_map& f, const scoring_config& cfg,
                                   const std::vector<int>& candidate_sizes);

}  // namespace gfa
