#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfa/feature_map.hpp"

namespace gfa {

/// Binary PPM (P6, 3 channels) or PGM (P5, 1 channel) with maxval 255;
/// samples map to byte / 255. Anything else is a parse_error naming the
/// offending byte offset.
feature_map read_image(const std::string& path);

/// Inverse of read_image for 1- or 3-channel maps: canonical header, samples
/// round(value * 255) clamped to [0, 255].
void write_image(const std::string& path, const feature_map& f);

/// 16-bit big-endian PGM (maxval 65535) for score and degree maps.
void write_pgm16(const std::string& path, const std::vector<std::uint16_t>& samples, int height,
                 int width);

/// In-memory encoders behind the writers; exposed for byte-level tests.
std::string encode_image(const feature_map& f);
feature_map decode_image(const std::string& bytes);

}  // namespace gfa
