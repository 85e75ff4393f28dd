#include "gfa/io_json.hpp"

#include "gfa/errors.hpp"
#include "gfa/io_util.hpp"

namespace gfa {

std::string to_string(pooling_mode m) { return m == pooling_mode::rms ? "rms" : "mean"; }

std::string to_string(scoring_strategy s) {
    switch (s) {
        case scoring_strategy::none: return "none";
        case scoring_strategy::sobel: return "sobel";
        case scoring_strategy::rescaling_residual: return "rescaling-residual";
        case scoring_strategy::local_entropy: return "local-entropy";
    }
    return "sobel";
}

std::string to_string(pass_order o) {
    return o == pass_order::global_then_local ? "global-then-local" : "local-then-global";
}

pooling_mode pooling_from_string(const std::string& s) {
    if (s == "rms") return pooling_mode::rms;
    if (s == "mean") return pooling_mode::mean;
    throw config_error("unknown pooling '" + s + "' (expected rms or mean)");
}

scoring_strategy strategy_from_string(const std::string& s) {
    if (s == "none") return scoring_strategy::none;
    if (s == "sobel") return scoring_strategy::sobel;
    if (s == "rescaling-residual") return scoring_strategy::rescaling_residual;
    if (s == "local-entropy") return scoring_strategy::local_entropy;
    throw config_error("unknown scoring strategy '" + s + "'");
}

pass_order order_from_string(const std::string& s) {
    if (s == "global-then-local") return pass_order::global_then_local;
    if (s == "local-then-global") return pass_order::local_then_global;
    throw config_error("unknown pass order '" + s + "'");
}

namespace {

int require_int(const nlohmann::json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) {
        throw config_error(std::string("config key '") + key + "' must be an integer");
    }
    return j[key].get<int>();
}

std::string require_string(const nlohmann::json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) {
        throw config_error(std::string("config key '") + key + "' must be a string");
    }
    return j[key].get<std::string>();
}

}  // namespace

gfa_config parse_gfa_config(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("config must be a JSON object");
    static const char* known[] = {"L", "G", "avg_degree", "T", "pooling",
                                  "strategy", "order", "seed"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw config_error("unknown config key '" + key + "'");
    }
    gfa_config cfg;
    cfg.window = require_int(j, "L", cfg.window);
    cfg.grid = require_int(j, "G", cfg.grid);
    cfg.avg_degree = require_int(j, "avg_degree", cfg.avg_degree);
    cfg.iterations = require_int(j, "T", cfg.iterations);
    cfg.pooling = pooling_from_string(require_string(j, "pooling", to_string(cfg.pooling)));
    cfg.strategy = strategy_from_string(require_string(j, "strategy", to_string(cfg.strategy)));
    cfg.order = order_from_string(require_string(j, "order", to_string(cfg.order)));
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            throw config_error("config key 'seed' must be an integer");
        }
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    validate(cfg);
    return cfg;
}

gfa_config load_gfa_config(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("invalid JSON in " + path + ": " + e.what(), e.byte);
    }
    return parse_gfa_config(j);
}

nlohmann::json to_json(const gfa_config& cfg) {
    return {{"L", cfg.window},
            {"G", cfg.grid},
            {"avg_degree", cfg.avg_degree},
            {"T", cfg.iterations},
            {"pooling", to_string(cfg.pooling)},
            {"strategy", to_string(cfg.strategy)},
            {"order", to_string(cfg.order)},
            {"seed", cfg.seed}};
}

nlohmann::json to_json(const graph_stats& st) {
    return {{"mean_degree", st.mean_degree},
            {"degree_hist", st.degree_hist},
            {"mean_abs_deviation", st.mean_abs_deviation},
            {"edges_total", st.edges_total},
            {"theta_quantiles", st.theta_quantiles}};
}

nlohmann::json to_json(const std::vector<pass_stats>& stats) {
    // Parallel arrays keep the file flat and diffable.
    std::vector<int> blocks;
    std::vector<std::string> modes;
    std::vector<double> mean_degree, mean_abs_deviation;
    std::vector<std::int64_t> edges_total;
    std::vector<std::uint64_t> sim_evals;
    for (const auto& ps : stats) {
        blocks.push_back(ps.block);
        modes.push_back(ps.mode);
        mean_degree.push_back(ps.mean_degree);
        mean_abs_deviation.push_back(ps.mean_abs_deviation);
        edges_total.push_back(ps.edges_total);
        sim_evals.push_back(ps.sim_evaluations);
    }
    return {{"block", blocks},
            {"mode", modes},
            {"mean_degree", mean_degree},
            {"mean_abs_deviation", mean_abs_deviation},
            {"edges_total", edges_total},
            {"sim_evals", sim_evals}};
}

}  // namespace gfa
