#include "gfa/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gfa/parallel.hpp"

namespace gfa {

namespace {

constexpr double kNormEpsilon = 1e-12;

double dot(std::span<const float> a, std::span<const float> b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        acc += static_cast<double>(a[k]) * static_cast<double>(b[k]);
    }
    return acc;
}

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

std::int64_t directed_graph::total_edges() const {
    return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
}

similarity_row cosine_row(const feature_map& f, const candidate_set& cand) {
    if (cand.merged.empty()) {
        throw domain_error("candidate set of node " + std::to_string(cand.owner) + " is empty");
    }
    similarity_row row;
    row.owner = cand.owner;
    row.candidates = cand.merged;
    row.sims.resize(cand.merged.size());

    const auto xi = f.feature(cand.owner);
    const double ni = std::sqrt(dot(xi, xi));
    for (std::size_t k = 0; k < cand.merged.size(); ++k) {
        const auto xj = f.feature(cand.merged[k]);
        const double nj = std::sqrt(dot(xj, xj));
        row.sims[k] = (ni < kNormEpsilon || nj < kNormEpsilon)
                          ? 0.0f
                          : static_cast<float>(dot(xi, xj) / (ni * nj));
    }
    return row;
}

threshold_result bisect_threshold(const similarity_row& row, int target_degree, int iterations,
                                  std::vector<bisection_step>* trace) {
    const std::size_t n = row.sims.size();
    if (n == 0) {
        throw domain_error("bisect_threshold needs a non-empty similarity row");
    }
    if (target_degree < 1 || static_cast<std::size_t>(target_degree) > n) {
        throw domain_error("target degree " + std::to_string(target_degree) +
                           " outside [1, " + std::to_string(n) + "]");
    }
    if (iterations < 1) {
        throw config_error("bisection needs at least one iteration");
    }

    double lo = row.sims[0], hi = row.sims[0], mean = 0.0;
    for (const float s : row.sims) {
        lo = std::min(lo, static_cast<double>(s));
        hi = std::max(hi, static_cast<double>(s));
        mean += s;
    }
    const double max_sim = hi;
    double threshold = mean / static_cast<double>(n);

    const auto count_at = [&](double t) {
        int m = 0;
        for (const float s : row.sims) m += s >= t;
        return m;
    };

    // Fixed iteration count: no early exit, so runtime is data independent.
    for (int it = 0; it < iterations; ++it) {
        const int m = count_at(threshold);
        if (m > target_degree) {
            lo = threshold;
        } else {
            hi = threshold;
        }
        threshold = (lo + hi) / 2.0;
        if (trace) trace->push_back({lo, hi, threshold, m});
    }

    // The mean init can round above every sim when the row is all ties;
    // clamp to the max so the selection is never empty.
    if (count_at(threshold) == 0) threshold = max_sim;

    threshold_result res;
    res.threshold = threshold;
    for (std::size_t k = 0; k < n; ++k) {
        if (row.sims[k] >= threshold) res.selected.push_back(row.candidates[k]);
    }
    res.degree = static_cast<int>(res.selected.size());
    return res;
}

directed_graph build_graph(const feature_map& f, const std::vector<candidate_set>& candidates,
                           const std::vector<int>& targets, int iterations, int threads) {
    const int n = f.node_count();
    if (static_cast<int>(candidates.size()) != n || static_cast<int>(targets.size()) != n) {
        throw config_error("build_graph needs one candidate set and one target per node");
    }

    directed_graph g;
    g.neighbors.resize(n);
    g.neighbor_sims.resize(n);
    g.thresholds.resize(n);
    g.degrees.resize(n);

    parallel_for(0, n, threads, [&](int i) {
        const similarity_row row = cosine_row(f, candidates[i]);
        const threshold_result res = bisect_threshold(row, targets[i], iterations);
        std::vector<float> sims;
        sims.reserve(res.selected.size());
        for (std::size_t k = 0; k < row.sims.size(); ++k) {
            if (row.sims[k] >= res.threshold) sims.push_back(row.sims[k]);
        }
        g.neighbors[i] = res.selected;
        g.neighbor_sims[i] = std::move(sims);
        g.thresholds[i] = res.threshold;
        g.degrees[i] = res.degree;
    });

    std::uint64_t evals = 0;
    for (const auto& c : candidates) evals += c.merged.size();
    g.sim_evaluations = evals;
    return g;
}

graph_stats summarize_graph(const directed_graph& g, const std::vector<int>& targets) {
    graph_stats st;
    const std::size_t n = g.degrees.size();
    if (n == 0) return st;

    st.edges_total = g.total_edges();
    st.mean_degree = static_cast<double>(st.edges_total) / static_cast<double>(n);

    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) dev += std::abs(g.degrees[i] - targets[i]);
    st.mean_abs_deviation = dev / static_cast<double>(n);

    const auto [lo_it, hi_it] = std::minmax_element(g.degrees.begin(), g.degrees.end());
    const int lo = *lo_it, hi = *hi_it;
    st.degree_hist.assign(16, 0);
    for (const int d : g.degrees) {
        const int bin = hi == lo ? 0 : static_cast<int>((static_cast<std::int64_t>(d) - lo) * 16 /
                                                        (hi - lo + 1));
        ++st.degree_hist[bin];
    }

    std::vector<double> sorted = g.thresholds;
    std::sort(sorted.begin(), sorted.end());
    for (const double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        st.theta_quantiles.push_back(quantile(sorted, q));
    }
    return st;
}

}  // namespace gfa
