#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gfa/aggregate.hpp"
#include "gfa/graph.hpp"

namespace gfa {

std::string to_string(pooling_mode m);
std::string to_string(scoring_strategy s);
std::string to_string(pass_order o);

pooling_mode pooling_from_string(const std::string& s);
scoring_strategy strategy_from_string(const std::string& s);
pass_order order_from_string(const std::string& s);

/// Strict config parsing: unknown keys are rejected, missing keys keep their
/// defaults. Keys: L, G, avg_degree, T, pooling, strategy, order, seed.
gfa_config parse_gfa_config(const nlohmann::json& j);
gfa_config load_gfa_config(const std::string& path);
nlohmann::json to_json(const gfa_config& cfg);

nlohmann::json to_json(const graph_stats& st);
nlohmann::json to_json(const std::vector<pass_stats>& stats);

}  // namespace gfa
