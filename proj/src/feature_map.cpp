#include "gfa/feature_map.hpp"

#include <cmath>
#include <string>

namespace gfa {

namespace {

void check_dims(int h, int w, int c) {
    if (h < 1 || w < 1 || c < 1) {
        throw config_error("feature_map dims must be positive, got " + std::to_string(h) + "x" +
                           std::to_string(w) + "x" + std::to_string(c));
    }
}

}  // namespace

feature_map::feature_map(int height, int width, int channels)
    : h_(height), w_(width), c_(channels) {
    check_dims(h_, w_, c_);
    data_.assign(static_cast<std::size_t>(h_) * w_ * c_, 0.0f);
}

feature_map::feature_map(int height, int width, int channels, std::vector<float> data)
    : h_(height), w_(width), c_(channels), data_(std::move(data)) {
    check_dims(h_, w_, c_);
    const std::size_t expected = static_cast<std::size_t>(h_) * w_ * c_;
    if (data_.size() != expected) {
        throw config_error("feature_map data length " + std::to_string(data_.size()) +
                           " != H*W*C = " + std::to_string(expected));
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!std::isfinite(data_[k])) {
            throw domain_error("feature_map rejects non-finite value at flat index " +
                               std::to_string(k));
        }
    }
}

std::span<const float> feature_map::feature(int node) const {
    if (node < 0 || node >= node_count()) {
        throw index_error("node " + std::to_string(node) + " out of range [0, " +
                          std::to_string(node_count()) + ")");
    }
    return {data_.data() + static_cast<std::size_t>(node) * c_, static_cast<std::size_t>(c_)};
}

coord node_to_coord(int node, shape2 s) {
    if (node < 0 || node >= s.h * s.w) {
        throw index_error("node " + std::to_string(node) + " out of range for " +
                          std::to_string(s.h) + "x" + std::to_string(s.w));
    }
    return {node / s.w, node % s.w};
}

int coord_to_node(coord p, shape2 s) {
    if (p.u < 0 || p.u >= s.h || p.v < 0 || p.v >= s.w) {
        throw index_error("coord (" + std::to_string(p.u) + "," + std::to_string(p.v) +
                          ") out of range for " + std::to_string(s.h) + "x" + std::to_string(s.w));
    }
    return p.u * s.w + p.v;
}

}  // namespace gfa
