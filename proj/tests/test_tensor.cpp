#include <doctest.h>

#include <cmath>
#include <limits>

#include "gfa/feature_map.hpp"
#include "gfa/rng.hpp"

using namespace gfa;

TEST_CASE("node/coord mapping") {
    const shape2 s{4, 4};
    CHECK(node_to_coord(0, s).u == 0);
    CHECK(node_to_coord(0, s).v == 0);
    CHECK(node_to_coord(5, s).u == 1);
    CHECK(node_to_coord(5, s).v == 1);
    CHECK(node_to_coord(15, s).u == 3);
    CHECK(node_to_coord(15, s).v == 3);

    CHECK_THROWS_AS(node_to_coord(16, s), index_error);
    CHECK_THROWS_AS(node_to_coord(-1, s), index_error);
    CHECK_THROWS_AS(coord_to_node({4, 0}, s), index_error);
}

TEST_CASE("round-trip is exhaustive on small shapes") {
    for (const shape2 s : {shape2{1, 1}, shape2{3, 7}, shape2{7, 3}, shape2{5, 5}}) {
        for (int i = 0; i < s.h * s.w; ++i) {
            CHECK(coord_to_node(node_to_coord(i, s), s) == i);
        }
    }
}

TEST_CASE("get_feature views the right slice") {
    SUBCASE("constant map") {
        feature_map f(3, 3, 4, std::vector<float>(3 * 3 * 4, 2.0f));
        for (int i = 0; i < f.node_count(); ++i) {
            for (const float v : f.feature(i)) CHECK(v == 2.0f);
        }
    }
    SUBCASE("ascending data, first node") {
        std::vector<float> data(4 * 4 * 3);
        for (std::size_t k = 0; k < data.size(); ++k) data[k] = static_cast<float>(k);
        feature_map f(4, 4, 3, std::move(data));
        const auto x0 = f.feature(0);
        CHECK(x0[0] == 0.0f);
        CHECK(x0[1] == 1.0f);
        CHECK(x0[2] == 2.0f);
        CHECK_THROWS_AS(f.feature(16), index_error);
    }
    SUBCASE("single pixel map holds all data") {
        feature_map f(1, 1, 5, {1, 2, 3, 4, 5});
        const auto x = f.feature(0);
        CHECK(x.size() == 5);
        CHECK(x[4] == 5.0f);
    }
}

TEST_CASE("layout property on random maps") {
    const feature_map f = random_map(6, 9, 3, 42);
    const shape2 s = f.shape();
    for (int i = 0; i < f.node_count(); ++i) {
        const coord p = node_to_coord(i, s);
        const auto x = f.feature(i);
        for (int c = 0; c < f.channels(); ++c) {
            CHECK(x[c] == f.data()[(static_cast<std::size_t>(p.u) * s.w + p.v) * 3 + c]);
        }
    }
}

TEST_CASE("construction validates dims, length and finiteness") {
    CHECK_THROWS_AS(feature_map(0, 4, 1), config_error);
    CHECK_THROWS_AS(feature_map(4, 4, 0), config_error);
    CHECK_THROWS_AS(feature_map(2, 2, 1, std::vector<float>(3, 0.0f)), config_error);
    CHECK_THROWS_AS(feature_map(1, 1, 2, {1.0f, std::numeric_limits<float>::quiet_NaN()}),
                    domain_error);
    CHECK_THROWS_AS(feature_map(1, 1, 1, {std::numeric_limits<float>::infinity()}), domain_error);
}
