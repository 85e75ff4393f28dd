#include "gfa/aggregate.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "gfa/parallel.hpp"
#include "gfa/rng.hpp"
#include "gfa/sampling.hpp"

namespace gfa {

projection_weights projection_weights::identity(int channels) {
    projection_weights w;
    w.in_channels = channels;
    w.out_channels = channels;
    w.matrix.assign(static_cast<std::size_t>(channels) * channels, 0.0f);
    for (int c = 0; c < channels; ++c) {
        w.matrix[static_cast<std::size_t>(c) * channels + c] = 1.0f;
    }
    return w;
}

projection_weights projection_weights::seeded(int in_channels, int out_channels,
                                              std::uint64_t seed) {
    if (in_channels < 1 || out_channels < 1) {
        throw config_error("projection needs positive channel counts");
    }
    projection_weights w;
    w.in_channels = in_channels;
    w.out_channels = out_channels;
    w.matrix.resize(static_cast<std::size_t>(in_channels) * out_channels);
    rng r(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(in_channels));
    for (auto& v : w.matrix) {
        v = static_cast<float>(r.uniform(-scale, scale));
    }
    return w;
}

projection_weights projection_weights::from_map(const feature_map& m) {
    if (m.channels() != 1) {
        throw config_error("weight tensor must have C=1 (H=in, W=out), got C=" +
                           std::to_string(m.channels()));
    }
    projection_weights w;
    w.in_channels = m.height();
    w.out_channels = m.width();
    w.matrix = m.data();  // finiteness already enforced by the map
    return w;
}

void validate(const gfa_config& cfg) {
    if (cfg.window < 1) throw config_error("window must be >= 1");
    if (cfg.grid < 1) throw config_error("grid must be >= 1");
    if (cfg.avg_degree < 1) throw config_error("avg_degree must be >= 1");
    if (cfg.iterations < 1) throw config_error("iterations must be >= 1");
}

std::vector<double> attention_weights(std::span<const float> sims) {
    if (sims.empty()) {
        throw domain_error("attention_weights needs a non-empty neighbor list");
    }
    double max_sim = sims[0];
    for (const float s : sims) max_sim = std::max(max_sim, static_cast<double>(s));
    std::vector<double> alpha(sims.size());
    double total = 0.0;
    for (std::size_t k = 0; k < sims.size(); ++k) {
        alpha[k] = std::exp(static_cast<double>(sims[k]) - max_sim);
        total += alpha[k];
    }
    for (auto& a : alpha) a /= total;
    return alpha;
}

feature_map aggregate_pass(const feature_map& f, const directed_graph& g,
                           const projection_weights& w, int threads) {
    const int n = f.node_count();
    const int c_in = f.channels();
    const int c_out = w.out_channels;
    if (w.in_channels != c_in) {
        throw config_error("projection expects " + std::to_string(w.in_channels) +
                           " channels, feature map has " + std::to_string(c_in));
    }
    if (static_cast<int>(g.neighbors.size()) != n) {
        throw config_error("graph was built for a different node count");
    }

    std::vector<float> out(static_cast<std::size_t>(n) * c_out);
    parallel_for(0, n, threads, [&](int i) {
        if (g.neighbor_sims[i].size() != g.neighbors[i].size()) {
            throw config_error("graph row " + std::to_string(i) +
                               " has misaligned neighbor/similarity lists");
        }
        const auto alpha = attention_weights(g.neighbor_sims[i]);
        // Mix neighbors first, project once: the projection is linear.
        std::vector<double> mixed(c_in, 0.0);
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            const auto xj = f.feature(g.neighbors[i][k]);
            for (int c = 0; c < c_in; ++c) mixed[c] += alpha[k] * xj[c];
        }
        float* const zi = out.data() + static_cast<std::size_t>(i) * c_out;
        for (int o = 0; o < c_out; ++o) {
            double acc = 0.0;
            for (int c = 0; c < c_in; ++c) {
                acc += static_cast<double>(w.matrix[static_cast<std::size_t>(c) * c_out + o]) *
                       mixed[c];
            }
            zi[o] = static_cast<float>(acc);
        }
    });
    return {f.height(), f.width(), c_out, std::move(out)};
}

namespace {

candidate_mode mode_for(pass_order order, int pass) {
    const bool global_first = order == pass_order::global_then_local;
    return (pass == 0) == global_first ? candidate_mode::global_only
                                       : candidate_mode::local_only;
}

feature_map run_pass(const feature_map& in, const gfa_config& cfg, candidate_mode mode,
                     const projection_weights& w, int block_index, const char* mode_name,
                     std::vector<pass_stats>* stats, int threads) {
    const auto candidates =
        build_all_candidates(in.shape(), cfg.window, cfg.grid, mode, threads);
    std::vector<int> sizes(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) sizes[i] = candidates[i].size();

    const auto alloc =
        score_and_budget(in, {cfg.strategy, cfg.pooling, cfg.avg_degree}, sizes);
    const auto graph = build_graph(in, candidates, alloc.targets, cfg.iterations, threads);
    feature_map agg = aggregate_pass(in, graph, w, threads);

    if (stats) {
        const graph_stats gs = summarize_graph(graph, alloc.targets);
        stats->push_back({block_index, mode_name, gs.mean_degree, gs.mean_abs_deviation,
                          gs.edges_total, graph.sim_evaluations});
    }

    if (in.channels() != agg.channels()) return agg;
    // Residual connection when the widths line up.
    std::vector<float> data(agg.data());
    const auto& base = in.data();
    for (std::size_t k = 0; k < data.size(); ++k) data[k] += base[k];
    return {in.height(), in.width(), in.channels(), std::move(data)};
}

feature_map run_block(const feature_map& f, const gfa_config& cfg,
                      const std::vector<projection_weights>& pass_weights, int block_index,
                      std::vector<pass_stats>* stats, int threads) {
    feature_map cur = f;
    for (int pass = 0; pass < 2; ++pass) {
        const candidate_mode mode = mode_for(cfg.order, pass);
        const char* name = mode == candidate_mode::global_only ? "global" : "local";
        cur = run_pass(cur, cfg, mode, pass_weights[pass], block_index, name, stats, threads);
    }
    return cur;
}

}  // namespace

feature_map gfa_block(const feature_map& f, const gfa_config& cfg,
                      std::vector<projection_weights> pass_weights,
                      std::vector<pass_stats>* stats, int threads) {
    validate(cfg);
    if (pass_weights.empty()) {
        for (int pass = 0; pass < 2; ++pass) {
            pass_weights.push_back(projection_weights::seeded(
                f.channels(), f.channels(), mix_seed(cfg.seed, 0, 0, pass)));
        }
    }
    if (pass_weights.size() != 2) {
        throw config_error("gfa_block needs one projection per pass (two total)");
    }
    return run_block(f, cfg, pass_weights, 0, stats, threads);
}

pipeline_result run_pipeline(const feature_map& f, const std::vector<stage_spec>& stages,
                             int threads) {
    feature_map cur = f;
    std::vector<pass_stats> stats;
    int block_index = 0;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const auto& stage = stages[s];
        validate(stage.config);
        if (stage.channels < 1) throw config_error("stage channel width must be >= 1");
        if (stage.blocks < 0) throw config_error("stage block count must be >= 0");
        for (int b = 0; b < stage.blocks; ++b) {
            std::vector<projection_weights> weights;
            for (int pass = 0; pass < 2; ++pass) {
                const int in_ch = pass == 0 ? cur.channels() : stage.channels;
                weights.push_back(projection_weights::seeded(
                    in_ch, stage.channels, mix_seed(stage.config.seed, s, b, pass)));
            }
            cur = run_block(cur, stage.config, weights, block_index, &stats, threads);
            ++block_index;
        }
    }
    return {std::move(cur), std::move(stats)};
}

}  // namespace gfa
