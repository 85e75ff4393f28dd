#pragma once

#include <span>
#include <vector>

#include "gfa/errors.hpp"

namespace gfa {

struct shape2 {
    int h = 0;
    int w = 0;
};

struct coord {
    int u = 0;  // row
    int v = 0;  // col
};

/// Dense H x W x C tensor, row-major by (row, col, channel). Pixels double as
/// graph nodes: node i sits at (i / W, i % W). Immutable after construction;
/// all values are checked finite so NaN/Inf cannot enter the pipeline.
class feature_map {
public:
    feature_map(int height, int width, int channels);
    feature_map(int height, int width, int channels, std::vector<float> data);

    int height() const { return h_; }
    int width() const { return w_; }
    int channels() const { return c_; }
    shape2 shape() const { return {h_, w_}; }
    int node_count() const { return h_ * w_; }

    /// Feature vector x_i of node i; read-only view into the tensor.
    std::span<const float> feature(int node) const;

    float value(int u, int v, int channel) const {
        return data_[(static_cast<std::size_t>(u) * w_ + v) * c_ + channel];
    }

    const std::vector<float>& data() const { return data_; }

private:
    int h_, w_, c_;
    std::vector<float> data_;
};

/// node -> (row, col); inverse of coord_to_node.
coord node_to_coord(int node, shape2 s);
int coord_to_node(coord p, shape2 s);

}  // namespace gfa
