#ifndef PCOMB_PACKING_PIPELINES_HPP
#define PCOMB_PACKING_PIPELINES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "../core/error.hpp"
#include "../core/random.hpp"
#include "../nibble/graph.hpp"
#include "../nibble/independent.hpp"
#include "geometry.hpp"
#include "packing_graph.hpp"
#include "point_cloud.hpp"

namespace pcomb {

inline constexpr double separation_guard = 1e-12;

struct PackingReport {
    unsigned d = 0;
    double half_side = 0.0;
    double radius = 0.0;
    std::size_t candidates = 0;
    std::size_t pruned = 0;
    std::size_t count = 0;
    std::size_t window_count = 0;      // centres inside [-L + 2r, L - 2r]^d
    double density = 0.0;              // count Vol(B_r) / (2L)^d
    double window_density = 0.0;       // same ratio on the interior window
    double normalized_occupancy = 0.0; // window_density 2^d
    double min_distance = std::numeric_limits<double>::infinity();  // over pairs closer than 4r
    bool valid = false;                // min_distance >= 2r - 1e-12
    PointCloud centers;
};

inline PackingReport packing_report(PointCloud centers, double radius)
{
    PackingReport r;
    const unsigned d = centers.d;
    r.d = d;
    r.half_side = centers.half_side;
    r.radius = radius;
    r.count = centers.size();
    const double L = centers.half_side, vol = ball_volume(d, radius);
    r.density = static_cast<double>(r.count) * vol / std::pow(2 * L, static_cast<double>(d));
    const double w = L - 2 * radius;
    if (w > 0) {
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const double* p = centers.point(i);
            if (std::all_of(p, p + d, [w](double x) { return std::abs(x) <= w; })) ++r.window_count;
        }
        r.window_density = static_cast<double>(r.window_count) * vol / std::pow(2 * w, static_cast<double>(d));
        r.normalized_occupancy = r.window_density * std::pow(2.0, static_cast<double>(d));
    }
    if (centers.size() > 1) {
        CellGrid grid(centers, 4 * radius);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < centers.size(); ++i) {
            grid.for_each_near(centers.point(i), [&](std::size_t j) {
                best = std::min(best, squared_distance(centers.point(i), centers.point(j), d));
            });
            grid.insert(i);
        }
        r.min_distance = std::sqrt(best);
    }
    r.valid = r.min_distance >= 2 * radius - separation_guard;
    r.centers = std::move(centers);
    return r;
}

// Random-order greedy: a candidate is kept iff it is at least 2r from every
// kept centre, so the result is saturated with respect to the candidates.
inline PackingReport saturated_greedy_packing(const PointCloud& candidates, double radius, std::uint64_t seed)
{
    detail::require(candidates.space == Space::box, "packing needs a box cloud");
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng gen(seed);
    shuffle(order, gen);
    CellGrid grid(candidates, 2 * radius);
    const double r2 = 4 * radius * radius;
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
        bool ok = true;
        grid.for_each_near(candidates.point(i), [&](std::size_t j) {
            if (ok && squared_distance(candidates.point(i), candidates.point(j), candidates.d) < r2) ok = false;
        });
        if (!ok) continue;
        grid.insert(i);
        kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());
    PointCloud c;
    c.d = candidates.d;
    c.half_side = candidates.half_side;
    for (std::size_t i : kept) c.push_back(candidates.point(i));
    PackingReport r = packing_report(std::move(c), radius);
    r.candidates = candidates.size();
    return r;
}

struct NibblePackingResult {
    PackingReport report;
    NibbleResult nibble;
    GraphStats graph;
};

struct PackingOptions {
    double prune_fraction = 0.25;  // prune floor as a fraction of r_d
    NibbleOptions nibble{};
};

// Poisson sample -> prune near pairs -> graph at distance 2 r_d -> nibble.
inline NibblePackingResult nibble_packing_pipeline(unsigned d, double intensity, double half_side, std::uint64_t seed,
                                                   const PackingOptions& opt = {})
{
    const double r = unit_ball_radius(d);
    const PointCloud cloud = sample_poisson_box(d, intensity, half_side, derive_seed(seed, 1));
    PackingGraph pg = build_packing_graph(cloud, r, opt.prune_fraction * r);
    NibblePackingResult out;
    out.graph = graph_stats(pg.graph);
    out.nibble = nibble_independent_set(pg.graph, derive_seed(seed, 2), opt.nibble);
    PointCloud centers;
    centers.d = d;
    centers.half_side = half_side;
    for (Vertex v : out.nibble.set) centers.push_back(pg.points.point(v));
    out.report = packing_report(std::move(centers), r);
    out.report.candidates = cloud.size();
    out.report.pruned = pg.pruned;
    if (!out.report.valid) throw std::logic_error("nibble packing violates the separation");
    return out;
}

struct CodeReport {
    unsigned d = 0;
    double theta_min = 0.0;
    std::size_t candidates = 0;
    std::size_t count = 0;
    std::size_t swaps = 0;         // successful 1-for-2 exchanges
    double min_angle = std::numbers::pi;
    bool valid = false;            // min_angle >= theta_min - 1e-12
    double cover_half_angle = 0.0; // count s_d(theta_min / 2): disjoint caps of radius theta_min / 2
    double cover_full_angle = 0.0; // count s_d(theta_min): the caps-of-radius-theta reading
    PointCloud code;
};

namespace detail {

inline double angle_between(const double* a, const double* b, unsigned d)
{
    double dot = 0.0;
    for (unsigned k = 0; k < d; ++k) dot += a[k] * b[k];
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

// Candidates for d = 2: an equispaced grid (size a multiple of 3) under a
// uniformly random rotation.
inline PointCloud circle_grid(std::size_t count, std::uint64_t seed)
{
    count = std::max<std::size_t>(3, (count + 2) / 3 * 3);
    Rng gen(seed);
    const double phase = 2 * std::numbers::pi * uniform01(gen);
    PointCloud c;
    c.d = 2;
    c.space = Space::sphere;
    c.coords.resize(2 * count);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = phase + 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
        c.coords[2 * i] = std::cos(a);
        c.coords[2 * i + 1] = std::sin(a);
    }
    return c;
}

// Replace one code point by two candidates that conflict with nothing else,
// until no such exchange exists.
inline std::size_t swap_refine(const SparseGraph& g, std::vector<Vertex>& set)
{
    const std::size_t n = g.size();
    std::size_t swaps = 0;
    for (bool improved = true; improved;) {
        improved = false;
        std::vector<char> in(n, 0);
        for (Vertex v : set) in[v] = 1;
        std::vector<std::uint32_t> conflicts(n, 0);
        std::vector<Vertex> owner(n, 0);
        for (Vertex v : set)
            for (Vertex w : g.neighbors(v)) {
                ++conflicts[w];
                owner[w] = v;
            }
        std::vector<std::vector<Vertex>> single(n);
        for (Vertex w = 0; w < n; ++w)
            if (!in[w] && conflicts[w] == 1) single[owner[w]].push_back(w);
        for (std::size_t k = 0; k < set.size() && !improved; ++k) {
            const Vertex u = set[k];
            const auto& s = single[u];
            for (std::size_t a = 0; a < s.size() && !improved; ++a)
                for (std::size_t b = a + 1; b < s.size() && !improved; ++b)
                    if (!g.adjacent(s[a], s[b])) {
                        set[k] = s[a];
                        set.push_back(s[b]);
                        ++swaps;
                        improved = true;
                    }
        }
    }
    std::sort(set.begin(), set.end());
    return swaps;
}

} // namespace detail

// Candidates on S^{d-1}, conflict graph at angle < theta_min, nibble, then
// 1-for-2 exchanges.
inline CodeReport spherical_code_pipeline(unsigned d, double theta_min, std::size_t candidates, std::uint64_t seed,
                                          const NibbleOptions& nopt = {.track_codegree = false})
{
    detail::require(d >= 2, "spherical codes need d >= 2");
    detail::require(theta_min > 0 && theta_min < std::numbers::pi, "theta_min must lie in (0, pi)");
    detail::require(candidates >= 1, "need at least one candidate");
    const PointCloud cloud =
        d == 2 ? detail::circle_grid(candidates, derive_seed(seed, 1)) : sample_sphere(d, candidates, derive_seed(seed, 1));
    const double limit = theta_min - separation_guard;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j)
            if (detail::angle_between(cloud.point(i), cloud.point(j), d) < limit)
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    const SparseGraph g(cloud.size(), edges);
    std::vector<Vertex> set = nibble_independent_set(g, derive_seed(seed, 2), nopt).set;

    CodeReport r;
    r.d = d;
    r.theta_min = theta_min;
    r.candidates = cloud.size();
    r.swaps = detail::swap_refine(g, set);
    r.count = set.size();
    r.code.d = d;
    r.code.space = Space::sphere;
    for (Vertex v : set) r.code.push_back(cloud.point(v));
    for (std::size_t i = 0; i < r.code.size(); ++i)
        for (std::size_t j = i + 1; j < r.code.size(); ++j)
            r.min_angle = std::min(r.min_angle, detail::angle_between(r.code.point(i), r.code.point(j), d));
    r.valid = r.min_angle >= limit;
    r.cover_half_angle = static_cast<double>(r.count) * cap_volume(d, 0.5 * theta_min);
    r.cover_full_angle = static_cast<double>(r.count) * cap_volume(d, theta_min);
    if (!r.valid) throw std::logic_error("spherical code violates the separation");
    return r;
}

} // namespace pcomb

#endif // PCOMB_PACKING_PIPELINES_HPP
