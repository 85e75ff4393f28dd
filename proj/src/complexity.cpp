#include "gfa/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gfa {

namespace {

constexpr int kKernelX[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
// Vertical kernel is the transpose of the horizontal one.
constexpr int kKernelY[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};

int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

double channel_pool(const double* vals, int c, pooling_mode pooling) {
    double acc = 0.0;
    if (pooling == pooling_mode::rms) {
        for (int k = 0; k < c; ++k) acc += vals[k] * vals[k];
        return std::sqrt(acc / c);
    }
    for (int k = 0; k < c; ++k) acc += vals[k];
    return acc / c;
}

std::vector<double> rescaling_residual_scores(const feature_map& f, pooling_mode pooling) {
    const int h = f.height(), w = f.width(), c = f.channels();
    const int h2 = (h + 1) / 2, w2 = (w + 1) / 2;

    // 2x average-pool; edge blocks shrink instead of padding.
    std::vector<double> down(static_cast<std::size_t>(h2) * w2 * c, 0.0);
    for (int bu = 0; bu < h2; ++bu) {
        for (int bv = 0; bv < w2; ++bv) {
            const int u1 = std::min(2 * bu + 1, h - 1);
            const int v1 = std::min(2 * bv + 1, w - 1);
            for (int ch = 0; ch < c; ++ch) {
                double sum = 0.0;
                int count = 0;
                for (int u = 2 * bu; u <= u1; ++u) {
                    for (int v = 2 * bv; v <= v1; ++v) {
                        sum += f.value(u, v, ch);
                        ++count;
                    }
                }
                down[(static_cast<std::size_t>(bu) * w2 + bv) * c + ch] = sum / count;
            }
        }
    }

    std::vector<double> out(static_cast<std::size_t>(h) * w);
    std::vector<double> residual(c);
    for (int u = 0; u < h; ++u) {
        for (int v = 0; v < w; ++v) {
            const std::size_t base = (static_cast<std::size_t>(u / 2) * w2 + v / 2) * c;
            for (int ch = 0; ch < c; ++ch) {
                residual[ch] = std::abs(f.value(u, v, ch) - down[base + ch]);
            }
            out[static_cast<std::size_t>(u) * w + v] = channel_pool(residual.data(), c, pooling);
        }
    }
    return out;
}

std::vector<double> local_entropy_scores(const feature_map& f, pooling_mode pooling) {
    const int h = f.height(), w = f.width(), c = f.channels();

    std::vector<double> pooled(static_cast<std::size_t>(h) * w);
    std::vector<double> vals(c);
    for (int u = 0; u < h; ++u) {
        for (int v = 0; v < w; ++v) {
            for (int ch = 0; ch < c; ++ch) vals[ch] = f.value(u, v, ch);
            pooled[static_cast<std::size_t>(u) * w + v] = channel_pool(vals.data(), c, pooling);
        }
    }

    std::vector<double> out(pooled.size());
    for (int u = 0; u < h; ++u) {
        for (int v = 0; v < w; ++v) {
            double window[9];
            int k = 0;
            for (int du = -1; du <= 1; ++du) {
                for (int dv = -1; dv <= 1; ++dv) {
                    window[k++] = pooled[static_cast<std::size_t>(clamp_index(u + du, h)) * w +
                                         clamp_index(v + dv, w)];
                }
            }
            const auto [lo, hi] = std::minmax_element(window, window + 9);
            const double span = *hi - *lo;
            double entropy = 0.0;
            if (span > 0.0) {
                int hist[8] = {0};
                for (int j = 0; j < 9; ++j) {
                    const int bin = std::min(7, static_cast<int>((window[j] - *lo) / span * 8.0));
                    ++hist[bin];
                }
                for (int bin = 0; bin < 8; ++bin) {
                    if (hist[bin] == 0) continue;
                    const double p = hist[bin] / 9.0;
                    entropy -= p * std::log2(p);
                }
            }
            out[static_cast<std::size_t>(u) * w + v] = entropy;
        }
    }
    return out;
}

}  // namespace

gradient_maps sobel_gradients(const feature_map& f) {
    const int h = f.height(), w = f.width(), c = f.channels();
    std::vector<float> sx(static_cast<std::size_t>(h) * w * c);
    std::vector<float> sy(sx.size());
    for (int u = 0; u < h; ++u) {
        for (int v = 0; v < w; ++v) {
            for (int ch = 0; ch < c; ++ch) {
                double ax = 0.0, ay = 0.0;
                for (int du = -1; du <= 1; ++du) {
                    const int uu = clamp_index(u + du, h);
                    for (int dv = -1; dv <= 1; ++dv) {
                        const int vv = clamp_index(v + dv, w);
                        const double val = f.value(uu, vv, ch);
                        ax += kKernelX[du + 1][dv + 1] * val;
                        ay += kKernelY[du + 1][dv + 1] * val;
                    }
                }
                const std::size_t at = (static_cast<std::size_t>(u) * w + v) * c + ch;
                sx[at] = static_cast<float>(ax);
                sy[at] = static_cast<float>(ay);
            }
        }
    }
    return {feature_map(h, w, c, std::move(sx)), feature_map(h, w, c, std::move(sy))};
}

std::vector<double> rms_g_score(const feature_map& f, pooling_mode pooling) {
    const gradient_maps g = sobel_gradients(f);
    const int n = f.node_count(), c = f.channels();
    std::vector<double> scores(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto gx = g.sx.feature(i);
        const auto gy = g.sy.feature(i);
        double acc = 0.0;
        for (int ch = 0; ch < c; ++ch) {
            const double m2 =
                static_cast<double>(gx[ch]) * gx[ch] + static_cast<double>(gy[ch]) * gy[ch];
            acc += pooling == pooling_mode::rms ? m2 : std::sqrt(m2);
        }
        scores[i] = pooling == pooling_mode::rms ? std::sqrt(acc / c) : acc / c;
    }
    return scores;
}

std::vector<double> alt_scores(const feature_map& f, scoring_strategy strategy,
                               pooling_mode pooling) {
    switch (strategy) {
        case scoring_strategy::rescaling_residual:
            return rescaling_residual_scores(f, pooling);
        case scoring_strategy::local_entropy:
            return local_entropy_scores(f, pooling);
        default:
            throw config_error("alt_scores handles rescaling-residual and local-entropy only");
    }
}

std::vector<double> compute_scores(const feature_map& f, scoring_strategy strategy,
                                   pooling_mode pooling) {
    switch (strategy) {
        case scoring_strategy::none:
            return std::vector<double>(static_cast<std::size_t>(f.node_count()), 0.0);
        case scoring_strategy::sobel:
            return rms_g_score(f, pooling);
        default:
            return alt_scores(f, strategy, pooling);
    }
}

complexity_scores allocate_quotas(const std::vector<double>& scores, int avg_degree,
                                  const std::vector<int>& candidate_sizes) {
    const std::size_t n = scores.size();
    if (avg_degree < 1) {
        throw config_error("avg_degree must be >= 1, got " + std::to_string(avg_degree));
    }
    if (candidate_sizes.size() != n) {
        throw config_error("candidate_sizes length " + std::to_string(candidate_sizes.size()) +
                           " != score count " + std::to_string(n));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (scores[i] < 0.0 || !std::isfinite(scores[i])) {
            throw domain_error("score at node " + std::to_string(i) + " must be finite and >= 0");
        }
        if (candidate_sizes[i] < 1) {
            throw config_error("candidate set of node " + std::to_string(i) + " is empty");
        }
        total += scores[i];
    }

    complexity_scores out;
    out.scores = scores;
    out.weights.resize(n);
    out.quotas.resize(n);
    out.targets.resize(n);
    const double budget = static_cast<double>(n) * avg_degree;
    for (std::size_t i = 0; i < n; ++i) {
        // Uniform fallback: the weight formula is 0/0 on an all-zero score map.
        out.weights[i] = total > 0.0 ? scores[i] / total : 1.0 / static_cast<double>(n);
        out.quotas[i] = budget * out.weights[i];
        const double rounded = std::round(out.quotas[i]);  // half away from zero
        out.targets[i] = static_cast<int>(
            std::clamp(rounded, 1.0, static_cast<double>(candidate_sizes[i])));
    }
    return out;
}

complexity_scores score_and_budget(const feature_map& f, const scoring_config& cfg,
                                   const std::vector<int>& candidate_sizes) {
    return allocate_quotas(compute_scores(f, cfg.strategy, cfg.pooling), cfg.avg_degree,
                           candidate_sizes);
}

}  // namespace gfa
