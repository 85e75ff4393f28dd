#pragma once

#include <string>

#include "gfa/feature_map.hpp"

namespace gfa {

/// FTEN v1: ASCII header "FTEN <H> <W> <C>\n" followed by H*W*C IEEE-754
/// 32-bit floats, little-endian, row-major. Round-trips are bit-exact.
feature_map read_tensor(const std::string& path);
void write_tensor(const std::string& path, const feature_map& f);

std::string encode_tensor(const feature_map& f);
feature_map decode_tensor(const std::string& bytes);

}  // namespace gfa
