#ifndef PCOMB_NIBBLE_INDEPENDENT_HPP
#define PCOMB_NIBBLE_INDEPENDENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "../core/error.hpp"
#include "../core/random.hpp"
#include "graph.hpp"

namespace pcomb {

inline double shearer_target(double n, double d)
{
    detail::require(d > 1.0, "shearer_target needs d > 1");
    return n * std::log(d) / d;
}

namespace detail {

// Random-order maximal independent set restricted to alive vertices.
inline std::vector<Vertex> greedy_on(const SparseGraph& g, const std::vector<char>& alive, std::uint64_t seed)
{
    std::vector<Vertex> order;
    for (Vertex v = 0; v < g.size(); ++v)
        if (alive[v]) order.push_back(v);
    Rng gen(seed);
    shuffle(order, gen);
    std::vector<char> blocked(g.size(), 0);
    std::vector<Vertex> out;
    for (Vertex v : order) {
        if (blocked[v]) continue;
        out.push_back(v);
        for (Vertex w : g.neighbors(v)) blocked[w] = 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline void assert_independent(const SparseGraph& g, const std::vector<Vertex>& set)
{
    if (!is_independent(g, set)) throw std::logic_error("solver produced a dependent set");
}

} // namespace detail

inline std::vector<Vertex> greedy_independent_set(const SparseGraph& g, std::uint64_t seed)
{
    auto out = detail::greedy_on(g, std::vector<char>(g.size(), 1), seed);
    detail::assert_independent(g, out);
    return out;
}

struct NibbleRound {
    std::size_t round = 0;
    double p = 0.0;
    std::size_t selected = 0;       // coins that came up
    std::size_t cleaned = 0;        // dropped from the selection by clean-up
    std::size_t added = 0;          // |I_i|
    std::size_t survivors_before = 0;
    std::size_t survivors = 0;      // after removing I_i and its neighbourhood
    std::size_t max_degree = 0;     // of the graph entering the round
    std::size_t max_codegree = 0;
    double avg_degree = 0.0;
    double open_fraction = 0.0;     // survivors / survivors_before
    double predicted_open = 0.0;    // (1 - p)^(max_degree + 1)
    double predicted_survivors = 0.0;  // (1 - gamma)^round n
    // Standard deviation of the survivor count accumulated over rounds 1..i.
    // Removals come in closed neighbourhoods, so each round contributes the
    // compound-Poisson variance p sum_u (d_u + 1)^2 rather than a binomial term.
    double survivor_sd = 0.0;
};

struct DoubleCountSample {
    std::size_t round = 0;
    Vertex x = 0;
    double lhs = 0.0;  // sum over y in Y of |N(x) cap N(y)|^2
    double rhs = 0.0;  // sum over ordered y, z in N(x) of |N(y) cap N(z)|
    bool holds = false;
};

struct NibbleOptions {
    double gamma = 0.125;
    bool track_codegree = true;
    std::size_t double_count_samples = 0;  // spread over the rounds
    std::size_t max_rounds = 100000;
};

struct NibbleResult {
    std::vector<Vertex> set;
    std::vector<NibbleRound> trace;
    std::size_t nibble_size = 0;  // vertices placed by the rounds
    std::size_t greedy_size = 0;  // vertices placed by the greedy finish
    std::vector<DoubleCountSample> double_count;
};

namespace detail {

// Both sides of the double-count inequality for vertex x in the alive graph.
inline DoubleCountSample double_count_sample(const SparseGraph& g, const std::vector<char>& alive, Vertex x)
{
    const std::size_t n = g.size();
    std::vector<char> in_nx(n, 0);
    std::vector<Vertex> nx;
    for (Vertex w : g.neighbors(x))
        if (alive[w]) {
            in_nx[w] = 1;
            nx.push_back(w);
        }
    // |N(x) cap N(y)| for every y reachable through N(x).
    std::vector<std::uint32_t> hits(n, 0);
    std::vector<Vertex> touched;
    for (Vertex w : nx)
        for (Vertex y : g.neighbors(w)) {
            if (!alive[y]) continue;
            if (hits[y]++ == 0) touched.push_back(y);
        }
    DoubleCountSample s;
    s.x = x;
    for (Vertex y : touched) {
        if (y != x && !in_nx[y]) s.lhs += static_cast<double>(hits[y]) * hits[y];
    }
    // Each 2-path y - u - z with y, z in N(x) contributes one to |N(y) cap N(z)|.
    std::vector<std::uint32_t> deg_into(n, 0);
    for (Vertex y : nx)
        for (Vertex u : g.neighbors(y))
            if (alive[u]) ++deg_into[u];
    for (Vertex u : touched) s.rhs += static_cast<double>(deg_into[u]) * deg_into[u];
    s.holds = s.lhs <= s.rhs;
    return s;
}

} // namespace detail

// Rounds i = 1, 2, ...: every alive vertex flips a coin with probability
// p_i = gamma / ((1 - gamma)^(i-1) Delta); of each selected edge the larger
// endpoint is dropped; the rest joins the set and is removed together with its
// neighbourhood. Once at most n / Delta vertices survive, a random greedy
// pass finishes the remnant.
inline NibbleResult nibble_independent_set(const SparseGraph& g, std::uint64_t seed, const NibbleOptions& opt = {})
{
    detail::require(opt.gamma > 0.0 && opt.gamma <= 0.25, "gamma must lie in (0, 1/4]");
    const std::size_t n = g.size();
    const std::size_t delta = g.max_degree();
    NibbleResult res;
    std::vector<char> alive(n, 1);
    std::size_t alive_count = n;
    if (delta >= 2) {
        const double stop = static_cast<double>(n) / static_cast<double>(delta);
        double variance = 0.0;
        std::vector<char> sel(n, 0), keep(n, 0);
        Rng dc_gen(derive_seed(seed, 0xdcu));
        for (std::size_t i = 1; i <= opt.max_rounds && static_cast<double>(alive_count) > stop; ++i) {
            NibbleRound r;
            r.round = i;
            r.p = std::min(1.0, opt.gamma / (std::pow(1.0 - opt.gamma, static_cast<double>(i - 1)) * static_cast<double>(delta)));
            r.survivors_before = alive_count;
            std::size_t deg_sum = 0;
            double closed_sq = 0.0;
            for (Vertex v = 0; v < n; ++v) {
                if (!alive[v]) continue;
                std::size_t d = 0;
                for (Vertex w : g.neighbors(v)) d += alive[w];
                r.max_degree = std::max(r.max_degree, d);
                deg_sum += d;
                closed_sq += static_cast<double>(d + 1) * static_cast<double>(d + 1);
            }
            variance += r.p * closed_sq;
            r.survivor_sd = std::sqrt(variance);
            r.predicted_survivors = std::pow(1.0 - opt.gamma, static_cast<double>(i)) * static_cast<double>(n);
            r.avg_degree = static_cast<double>(deg_sum) / static_cast<double>(alive_count);
            if (opt.track_codegree) r.max_codegree = g.max_codegree(alive);

            if (res.double_count.size() < opt.double_count_samples) {
                // Spread the remaining samples over the rounds still expected.
                const double left = std::log(static_cast<double>(alive_count) / stop) / -std::log1p(-opt.gamma);
                const std::size_t rounds_left = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(left)));
                const std::size_t want = opt.double_count_samples - res.double_count.size();
                const std::size_t quota = (want + rounds_left - 1) / rounds_left;
                std::vector<Vertex> pool;
                for (Vertex v = 0; v < n; ++v)
                    if (alive[v]) pool.push_back(v);
                for (std::size_t k = 0; k < quota; ++k) {
                    auto s = detail::double_count_sample(g, alive, pool[uniform_index(dc_gen, pool.size())]);
                    s.round = i;
                    res.double_count.push_back(s);
                }
            }

            const std::uint64_t round_seed = derive_seed(seed, i);
            for (Vertex v = 0; v < n; ++v) {
                sel[v] = alive[v] && unit_from_bits(mix64(round_seed ^ mix64(v))) < r.p;
                r.selected += sel[v];
            }
            for (Vertex v = 0; v < n; ++v) {
                keep[v] = 0;
                if (!sel[v]) continue;
                keep[v] = 1;
                for (Vertex w : g.neighbors(v))
                    if (w < v && sel[w]) {
                        keep[v] = 0;
                        break;
                    }
            }
            for (Vertex v = 0; v < n; ++v) {
                if (!keep[v]) continue;
                res.set.push_back(v);
                ++r.added;
                if (alive[v]) {
                    alive[v] = 0;
                    --alive_count;
                }
                for (Vertex w : g.neighbors(v))
                    if (alive[w]) {
                        alive[w] = 0;
                        --alive_count;
                    }
            }
            r.cleaned = r.selected - r.added;
            r.survivors = alive_count;
            r.open_fraction = static_cast<double>(alive_count) / static_cast<double>(r.survivors_before);
            r.predicted_open = std::pow(1.0 - r.p, static_cast<double>(r.max_degree + 1));
            res.trace.push_back(r);
            if (r.added == 0 && r.p >= 1.0) break;
        }
    }
    res.nibble_size = res.set.size();
    auto rest = detail::greedy_on(g, alive, derive_seed(seed, 0x67u));
    res.greedy_size = rest.size();
    res.set.insert(res.set.end(), rest.begin(), rest.end());
    std::sort(res.set.begin(), res.set.end());
    detail::assert_independent(g, res.set);
    return res;
}

} // namespace pcomb

#endif // PCOMB_NIBBLE_INDEPENDENT_HPP
