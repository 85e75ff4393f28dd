#pragma once

#include <cstdint>
#include <random>

#include "gfa/feature_map.hpp"

namespace gfa {

/// Deterministic random source. mt19937_64 gives identical streams on every
/// platform; the float mappings below avoid std distributions, whose output
/// is not pinned by the standard.
class rng {
public:
    explicit rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal();

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);

    std::uint64_t next() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64-style mixer for deriving per-component seeds from one master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0);

/// Seeded test/bench tensor; gaussian=false gives uniform [0,1) entries.
feature_map random_map(int height, int width, int channels, std::uint64_t seed,
                       bool gaussian = false);

}  // namespace gfa
