#include "gfa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gfa::oracle {

std::vector<int> topk(std::span<const float> sims, int k) {
    if (sims.empty()) throw domain_error("topk needs a non-empty value list");
    if (k < 1 || static_cast<std::size_t>(k) > sims.size()) {
        throw domain_error("k outside [1, n]");
    }
    std::vector<int> order(sims.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sims[a] > sims[b]; });
    const float kth = sims[order[k - 1]];
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(sims.size()); ++i) {
        if (sims[i] >= kth) out.push_back(i);
    }
    return out;
}

gradient_maps sobel(const feature_map& f) {
    const int h = f.height(), w = f.width(), c = f.channels();
    const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    std::vector<float> sx(static_cast<std::size_t>(h) * w * c), sy(sx.size());
    for (int u = 0; u < h; ++u) {
        for (int v = 0; v < w; ++v) {
            for (int ch = 0; ch < c; ++ch) {
                double ax = 0.0, ay = 0.0;
                for (int a = -1; a <= 1; ++a) {
                    for (int b = -1; b <= 1; ++b) {
                        const int uu = std::min(std::max(u + a, 0), h - 1);
                        const int vv = std::min(std::max(v + b, 0), w - 1);
                        const double val = f.value(uu, vv, ch);
                        ax += kx[a + 1][b + 1] * val;
                        ay += kx[b + 1][a + 1] * val;  // transpose
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

std::vector<double> rms_score(const feature_map& f, pooling_mode pooling) {
    const gradient_maps g = sobel(f);
    const int h = f.height(), w = f.width(), c = f.channels();
    std::vector<double> out(static_cast<std::size_t>(h) * w);
    for (int u = 0; u < h; ++u) {
        for (int v = 0; v < w; ++v) {
            double acc = 0.0;
            for (int ch = 0; ch < c; ++ch) {
                const double gx = g.sx.value(u, v, ch);
                const double gy = g.sy.value(u, v, ch);
                const double mag2 = gx * gx + gy * gy;
                acc += pooling == pooling_mode::rms ? mag2 : std::sqrt(mag2);
            }
            out[static_cast<std::size_t>(u) * w + v] =
                pooling == pooling_mode::rms ? std::sqrt(acc / c) : acc / c;
        }
    }
    return out;
}

namespace {

// Candidate membership by predicate over every node in the image, rather
// than enumerating offsets like the main path does.
std::vector<int> candidates_by_scan(int node, int h, int w, int window, int grid, bool global) {
    const int ui = node / w, vi = node % w;
    std::vector<int> out;
    for (int j = 0; j < h * w; ++j) {
        const int uj = j / w, vj = j % w;
        bool ok;
        if (global) {
            const int sh = h / grid, sw = w / grid;
            ok = uj % sh == ui % sh && uj / sh < grid && vj % sw == vi % sw && vj / sw < grid;
        } else {
            const int du = uj - ui, dv = vj - vi;
            ok = du >= -(window / 2) && du <= (window + 1) / 2 - 1 && dv >= -(window / 2) &&
                 dv <= (window + 1) / 2 - 1;
        }
        if (ok) out.push_back(j);
    }
    return out;
}

// Rounded to float like the main path stores its rows.
float cosine(const feature_map& f, int i, int j) {
    const int c = f.channels();
    double dij = 0.0, dii = 0.0, djj = 0.0;
    for (int ch = 0; ch < c; ++ch) {
        const double a = f.data()[static_cast<std::size_t>(i) * c + ch];
        const double b = f.data()[static_cast<std::size_t>(j) * c + ch];
        dij += a * b;
        dii += a * a;
        djj += b * b;
    }
    const double ni = std::sqrt(dii), nj = std::sqrt(djj);
    if (ni < 1e-12 || nj < 1e-12) return 0.0f;
    return static_cast<float>(dij / (ni * nj));
}

feature_map one_pass(const feature_map& f, const gfa_config& cfg, bool global_pass,
                     const projection_weights& w) {
    const int h = f.height(), width = f.width(), c = f.channels(), n = h * width;

    // Scores.
    std::vector<double> scores(n, 0.0);
    if (cfg.strategy == scoring_strategy::sobel) {
        scores = rms_score(f, cfg.pooling);
    } else if (cfg.strategy != scoring_strategy::none) {
        throw config_error("oracle block supports scoring none and sobel only");
    }

    // Candidates and quotas.
    std::vector<std::vector<int>> cand(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        cand[i] = candidates_by_scan(i, h, width, cfg.window, cfg.grid, global_pass);
        total += scores[i];
    }
    std::vector<int> targets(n);
    for (int i = 0; i < n; ++i) {
        const double wi = total > 0.0 ? scores[i] / total : 1.0 / n;
        const double quota = static_cast<double>(n) * cfg.avg_degree * wi;
        targets[i] = static_cast<int>(
            std::clamp(std::round(quota), 1.0, static_cast<double>(cand[i].size())));
    }

    // Per-node bisection and aggregation.
    std::vector<float> out(static_cast<std::size_t>(n) * w.out_channels, 0.0f);
    for (int i = 0; i < n; ++i) {
        const int m = static_cast<int>(cand[i].size());
        std::vector<float> sims(m);
        for (int k = 0; k < m; ++k) sims[k] = cosine(f, i, cand[i][k]);

        double lo = sims[0], hi = sims[0], mean = 0.0;
        for (const float s : sims) {
            lo = std::min<double>(lo, s);
            hi = std::max<double>(hi, s);
            mean += s;
        }
        const double top = hi;
        double theta = mean / m;
        for (int it = 0; it < cfg.iterations; ++it) {
            int count = 0;
            for (const float s : sims) count += s >= theta;
            if (count > targets[i]) {
                lo = theta;
            } else {
                hi = theta;
            }
            theta = (lo + hi) / 2.0;
        }
        int count = 0;
        for (const float s : sims) count += s >= theta;
        if (count == 0) theta = top;

        double denom = 0.0;
        for (int k = 0; k < m; ++k) {
            if (sims[k] >= theta) denom += std::exp(static_cast<double>(sims[k]));
        }
        std::vector<double> zi(w.out_channels, 0.0);
        for (int k = 0; k < m; ++k) {
            if (sims[k] < theta) continue;
            const double alpha = std::exp(static_cast<double>(sims[k])) / denom;
            const int j = cand[i][k];
            for (int o = 0; o < w.out_channels; ++o) {
                double proj = 0.0;
                for (int ch = 0; ch < c; ++ch) {
                    proj += static_cast<double>(
                                w.matrix[static_cast<std::size_t>(ch) * w.out_channels + o]) *
                            f.data()[static_cast<std::size_t>(j) * c + ch];
                }
                zi[o] += alpha * proj;
            }
        }
        for (int o = 0; o < w.out_channels; ++o) {
            out[static_cast<std::size_t>(i) * w.out_channels + o] = static_cast<float>(zi[o]);
        }
    }

    if (w.out_channels == c) {
        for (int i = 0; i < n; ++i) {
            for (int ch = 0; ch < c; ++ch) {
                out[static_cast<std::size_t>(i) * c + ch] +=
                    f.data()[static_cast<std::size_t>(i) * c + ch];
            }
        }
    }
    return {h, width, w.out_channels, std::move(out)};
}

}  // namespace

feature_map aggregate_block(const feature_map& f, const gfa_config& cfg,
                            const std::vector<projection_weights>& pass_weights) {
    if (pass_weights.size() != 2) {
        throw config_error("oracle block needs one projection per pass");
    }
    const bool global_first = cfg.order == pass_order::global_then_local;
    feature_map mid = one_pass(f, cfg, global_first, pass_weights[0]);
    return one_pass(mid, cfg, !global_first, pass_weights[1]);
}

edge_totals count_edges(const directed_graph& g, const std::vector<candidate_set>& candidates,
                        int avg_degree, int window, int grid) {
    edge_totals t;
    for (const int d : g.degrees) t.sum_degrees += d;
    for (const auto& c : candidates) t.sum_candidates += c.merged.size();
    const double n = static_cast<double>(g.degrees.size());
    if (n > 0) {
        t.budget_ratio = static_cast<double>(t.sum_degrees) / (n * avg_degree);
        t.capacity_ratio = static_cast<double>(t.sum_candidates) /
                           (n * (static_cast<double>(window) * window +
                                 static_cast<double>(grid) * grid));
    }
    return t;
}

double max_abs_deviation(const feature_map& a, const feature_map& b) {
    if (a.height() != b.height() || a.width() != b.width() || a.channels() != b.channels()) {
        throw config_error("shape mismatch in map comparison");
    }
    double dev = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        dev = std::max(dev, std::abs(static_cast<double>(a.data()[k]) - b.data()[k]));
    }
    return dev;
}

report compare_block(const std::string& case_id, const feature_map& f, const gfa_config& cfg,
                     const std::vector<projection_weights>& pass_weights, double tolerance) {
    std::vector<pass_stats> stats;
    const feature_map main = gfa_block(f, cfg, pass_weights, &stats, 1);
    const feature_map ref = aggregate_block(f, cfg, pass_weights);

    report r;
    r.case_id = case_id;
    r.max_abs_deviation = max_abs_deviation(main, ref);
    r.passed = r.max_abs_deviation <= tolerance;
    for (const auto& ps : stats) {
        r.edges += ps.edges_total;
        r.sim_evaluations += ps.sim_evaluations;
    }
    return r;
}

}  // namespace gfa::oracle
