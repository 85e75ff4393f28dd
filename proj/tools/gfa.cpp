#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfa/aggregate.hpp"
#include "gfa/complexity.hpp"
#include "gfa/errors.hpp"
#include "gfa/ften_io.hpp"
#include "gfa/graph.hpp"
#include "gfa/io_json.hpp"
#include "gfa/io_util.hpp"
#include "gfa/oracle.hpp"
#include "gfa/pnm_io.hpp"
#include "gfa/rng.hpp"
#include "gfa/sampling.hpp"

namespace {

using nlohmann::json;

// Exit statuses: 0 ok, 1 usage, 2 I/O or parse, 3 configuration.
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;

gfa::feature_map load_map(const std::string& path) {
    const std::string bytes = gfa::read_file(path);
    if (bytes.rfind("FTEN ", 0) == 0) return gfa::decode_tensor(bytes);
    if (bytes.rfind("P5", 0) == 0 || bytes.rfind("P6", 0) == 0) return gfa::decode_image(bytes);
    throw gfa::parse_error("unrecognized input format (expected FTEN, P5 or P6) in " + path, 0);
}

gfa::gfa_config load_config(const std::string& path) {
    if (path.empty()) return {};
    return gfa::load_gfa_config(path);
}

void write_json(const std::string& path, const json& j) {
    gfa::atomic_write_file(path, j.dump(2) + "\n");
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct score_args {
    std::string input, out, strategy = "sobel", pooling = "rms";
};

void run_score(const score_args& a) {
    const gfa::feature_map f = load_map(a.input);
    const auto scores = gfa::compute_scores(f, gfa::strategy_from_string(a.strategy),
                                             gfa::pooling_from_string(a.pooling));
    const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<std::uint16_t> samples(scores.size(), 0);
    if (hi > lo) {
        for (std::size_t i = 0; i < scores.size(); ++i) {
            samples[i] =
                static_cast<std::uint16_t>(std::lround((scores[i] - lo) / (hi - lo) * 65535.0));
        }
    }
    gfa::write_pgm16(a.out, samples, f.height(), f.width());
    write_json(a.out + ".json", json{{"min", lo}, {"max", hi}});
}

struct graph_args {
    std::string input, config, stats, degree_map, dump_out, mode = "both";
    int dump_node = -1;
    int threads = 1;
};

gfa::candidate_mode mode_from_string(const std::string& s) {
    if (s == "local") return gfa::candidate_mode::local_only;
    if (s == "global") return gfa::candidate_mode::global_only;
    if (s == "both") return gfa::candidate_mode::both;
    throw gfa::config_error("unknown candidate mode '" + s + "'");
}

void run_graph(const graph_args& a) {
    const gfa::feature_map f = load_map(a.input);
    const gfa::gfa_config cfg = load_config(a.config);
    const gfa::candidate_mode mode = mode_from_string(a.mode);

    if (a.dump_node >= 0) {
        const auto cs =
            gfa::build_candidates(a.dump_node, f.shape(), cfg.window, cfg.grid, mode);
        write_json(a.dump_out, json{{"node", cs.owner},
                                    {"local", cs.local},
                                    {"global", cs.global},
                                    {"merged", cs.merged}});
    }
    if (a.stats.empty() && a.degree_map.empty()) return;

    const auto candidates =
        gfa::build_all_candidates(f.shape(), cfg.window, cfg.grid, mode, a.threads);
    std::vector<int> sizes(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) sizes[i] = candidates[i].size();
    const auto scores = gfa::compute_scores(f, cfg.strategy, cfg.pooling);
    const auto alloc = gfa::allocate_quotas(scores, cfg.avg_degree, sizes);
    const auto graph = gfa::build_graph(f, candidates, alloc.targets, cfg.iterations, a.threads);

    if (!a.stats.empty()) {
        write_json(a.stats, gfa::to_json(gfa::summarize_graph(graph, alloc.targets)));
    }
    if (!a.degree_map.empty()) {
        std::vector<std::uint16_t> samples(graph.degrees.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            samples[i] = static_cast<std::uint16_t>(std::min(graph.degrees[i], 65535));
        }
        gfa::write_pgm16(a.degree_map, samples, f.height(), f.width());
    }
}

struct aggregate_args {
    std::string input, config, weights, out, stats;
    int blocks = 1;
    int threads = 1;
};

void run_aggregate(const aggregate_args& a) {
    const gfa::feature_map f = load_map(a.input);
    const gfa::gfa_config cfg = load_config(a.config);

    gfa::feature_map result(1, 1, 1);
    std::vector<gfa::pass_stats> stats;
    if (!a.weights.empty()) {
        if (a.blocks != 1) {
            throw gfa::config_error("--weights applies to a single block (--blocks 1)");
        }
        const auto w = gfa::projection_weights::from_map(gfa::read_tensor(a.weights));
        if (w.in_channels != f.channels() || w.out_channels != f.channels()) {
            throw gfa::config_error("weight tensor must be square CxC matching the input's " +
                                    std::to_string(f.channels()) + " channels");
        }
        result = gfa::gfa_block(f, cfg, {w, w}, &stats, a.threads);
    } else {
        auto res = gfa::run_pipeline(f, {{a.blocks, cfg, f.channels()}}, a.threads);
        result = std::move(res.output);
        stats = std::move(res.stats);
    }

    gfa::write_tensor(a.out, result);
    if (!a.stats.empty()) write_json(a.stats, gfa::to_json(stats));
}

struct bench_args {
    std::string sizes = "32,64", config, out;
    int channels = 8;
    std::uint64_t seed = 1;
    int threads = 1;
};

void run_bench(const bench_args& a) {
    const gfa::gfa_config base = load_config(a.config);
    std::string csv =
        "h,w,c,nodes,sum_candidates,sim_evals,edges,budget_ratio,capacity_ratio,"
        "construct_ms,aggregate_ms\n";
    std::stringstream sizes(a.sizes);
    std::string tok;
    while (std::getline(sizes, tok, ',')) {
        const int side = std::stoi(tok);
        const auto f = gfa::random_map(side, side, a.channels,
                                        gfa::mix_seed(a.seed, static_cast<std::uint64_t>(side)),
                                        /*gaussian=*/true);
        gfa::gfa_config cfg = base;
        cfg.grid = std::min(cfg.grid, side);  // keep the lattice stride positive at tiny sizes

        const auto t0 = std::chrono::steady_clock::now();
        const auto candidates = gfa::build_all_candidates(
            f.shape(), cfg.window, cfg.grid, gfa::candidate_mode::both, a.threads);
        std::vector<int> ns(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i) ns[i] = candidates[i].size();
        const auto scores = gfa::compute_scores(f, cfg.strategy, cfg.pooling);
        const auto alloc = gfa::allocate_quotas(scores, cfg.avg_degree, ns);
        const auto graph =
            gfa::build_graph(f, candidates, alloc.targets, cfg.iterations, a.threads);
        const double construct_ms = elapsed_ms(t0);

        const auto t1 = std::chrono::steady_clock::now();
        const auto w = gfa::projection_weights::seeded(a.channels, a.channels, cfg.seed);
        const auto agg = gfa::aggregate_pass(f, graph, w, a.threads);
        const double aggregate_ms = elapsed_ms(t1);

        const auto totals =
            gfa::oracle::count_edges(graph, candidates, cfg.avg_degree, cfg.window, cfg.grid);
        csv += std::to_string(side) + "," + std::to_string(side) + "," +
               std::to_string(a.channels) + "," + std::to_string(f.node_count()) + "," +
               std::to_string(totals.sum_candidates) + "," +
               std::to_string(graph.sim_evaluations) + "," + std::to_string(totals.sum_degrees) +
               "," + std::to_string(totals.budget_ratio) + "," +
               std::to_string(totals.capacity_ratio) + "," + std::to_string(construct_ms) + "," +
               std::to_string(aggregate_ms) + "\n";
    }
    gfa::atomic_write_file(a.out, csv);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"content-adaptive graph feature aggregation tools"};
    app.require_subcommand(1);

    score_args sa;
    auto* score = app.add_subcommand("score", "complexity score map from an image or tensor");
    score->add_option("--input", sa.input, "PPM/PGM image or FTEN tensor")->required();
    score->add_option("--out", sa.out, "16-bit PGM output (sidecar <out>.json holds min/max)")
        ->required();
    score->add_option("--strategy", sa.strategy, "none|sobel|rescaling-residual|local-entropy");
    score->add_option("--pooling", sa.pooling, "rms|mean");

    graph_args ga;
    auto* graph = app.add_subcommand("graph", "build the similarity graph and report on it");
    graph->add_option("--input", ga.input, "FTEN tensor or PPM/PGM image")->required();
    graph->add_option("--config", ga.config, "GFA config JSON");
    graph->add_option("--mode", ga.mode, "candidate mode: local|global|both");
    graph->add_option("--stats", ga.stats, "write degree/threshold stats JSON here");
    graph->add_option("--degree-map", ga.degree_map, "write per-node degree as 16-bit PGM");
    graph->add_option("--dump-candidates", ga.dump_node, "node index to dump candidates for");
    graph->add_option("--dump-out", ga.dump_out, "candidate dump JSON path");
    graph->add_option("--threads", ga.threads, "worker thread hint");

    aggregate_args aa;
    auto* aggregate = app.add_subcommand("aggregate", "run aggregation blocks over a tensor");
    aggregate->add_option("--input", aa.input, "FTEN tensor or PPM/PGM image")->required();
    aggregate->add_option("--config", aa.config, "GFA config JSON");
    aggregate->add_option("--weights", aa.weights, "FTEN projection (H=in, W=out, C=1)");
    aggregate->add_option("--blocks", aa.blocks, "number of blocks to run");
    aggregate->add_option("--out", aa.out, "FTEN output path")->required();
    aggregate->add_option("--stats", aa.stats, "per-pass stats JSON path");
    aggregate->add_option("--threads", aa.threads, "worker thread hint");

    bench_args ba;
    auto* bench = app.add_subcommand("bench", "edge-count and timing table on random tensors");
    bench->add_option("--sizes", ba.sizes, "comma-separated square sides");
    bench->add_option("--channels", ba.channels, "channel count");
    bench->add_option("--seed", ba.seed, "tensor seed");
    bench->add_option("--config", ba.config, "GFA config JSON");
    bench->add_option("--out", ba.out, "CSV output path")->required();
    bench->add_option("--threads", ba.threads, "worker thread hint");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cerr << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (score->parsed()) {
            run_score(sa);
        } else if (graph->parsed()) {
            if (ga.dump_node >= 0 && ga.dump_out.empty()) {
                std::cerr << "--dump-candidates requires --dump-out\n";
                return kExitUsage;
            }
            if (ga.dump_node < 0 && ga.stats.empty() && ga.degree_map.empty()) {
                std::cerr << "graph needs --stats, --degree-map or --dump-candidates\n";
                return kExitUsage;
            }
            run_graph(ga);
        } else if (aggregate->parsed()) {
            run_aggregate(aa);
        } else if (bench->parsed()) {
            run_bench(ba);
        }
    } catch (const gfa::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const gfa::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const gfa::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
