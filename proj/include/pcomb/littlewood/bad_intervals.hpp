#ifndef PCOMB_LITTLEWOOD_BAD_INTERVALS_HPP
#define PCOMB_LITTLEWOOD_BAD_INTERVALS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "../core/error.hpp"

namespace pcomb {

// Arc [a, b] of the circle with 0 <= a < 2 pi and a < b; b may exceed 2 pi
// when the arc wraps through 0.
struct Arc {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
    bool contains(double x) const
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        x = std::fmod(x, two_pi);
        if (x < 0) x += two_pi;
        return (x >= a && x <= b) || (x + two_pi >= a && x + two_pi <= b);
    }
};

struct BadIntervalConfig {
    double gamma = 1.0 / 32.0;
    double k1 = 8.0;          // count <= k1 gamma n
    double k2 = 64.0;         // length <= k2 / n
    double k3 = 1.0 / 64.0;   // gap >= k3 / n
};

struct BadIntervalSet {
    std::vector<Arc> intervals;  // sorted by start, pairwise disjoint
    double delta = 0.0;
    std::size_t n = 0;
    std::size_t grid_points = 0;
    double max_length = 0.0;
    double min_gap = 0.0;  // smallest circular gap; 2 pi when empty
    bool count_ok = true;
    bool length_ok = true;
    bool gap_ok = true;
    bool whole_circle = false;

    std::size_t count() const { return intervals.size(); }
    bool valid() const { return count_ok && length_ok && gap_ok && !whole_circle; }
    double total_length() const
    {
        double s = 0.0;
        for (const auto& i : intervals) s += i.length();
        return s;
    }
};

// Maximal runs of grid points with |c(x)| < delta sqrt(n), each widened by one
// grid cell per side, touching runs merged. Conditions are recorded, not
// enforced; detect_bad_intervals enforces them.
inline BadIntervalSet scan_bad_intervals(const std::function<double(double)>& c, std::size_t n, double delta,
                                         std::size_t grid_multiplier, const BadIntervalConfig& cfg = {})
{
    detail::require(delta > 0.0, "delta must be positive");
    detail::require(n >= 1 && grid_multiplier >= 1, "need n >= 1 and grid_multiplier >= 1");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const std::size_t N = grid_multiplier * n;
    const double h = two_pi / static_cast<double>(N);
    const double thr = delta * std::sqrt(static_cast<double>(n));

    BadIntervalSet out;
    out.delta = delta;
    out.n = n;
    out.grid_points = N;
    std::vector<char> bad(N);
    std::size_t nbad = 0;
    for (std::size_t j = 0; j < N; ++j) {
        bad[j] = std::abs(c(h * static_cast<double>(j))) < thr;
        nbad += bad[j];
    }
    if (nbad == N) {
        out.whole_circle = true;
        out.intervals.push_back({0.0, two_pi});
        out.max_length = two_pi;
        out.min_gap = 0.0;
        out.count_ok = out.length_ok = out.gap_ok = false;
        return out;
    }

    std::vector<Arc> arcs;
    for (std::size_t s = 0; s < N; ++s) {
        if (!bad[s] || bad[(s + N - 1) % N]) continue;
        std::size_t len = 1;
        while (bad[(s + len) % N]) ++len;
        double a = h * static_cast<double>(s) - h;
        double b = h * static_cast<double>(s + len - 1) + h;
        if (a < 0) {
            a += two_pi;
            b += two_pi;
        }
        arcs.push_back({a, b});
    }
    std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.a < y.a; });

    // Widened runs separated by a single good point touch; merge them.
    std::vector<Arc> merged;
    for (const Arc& r : arcs) {
        if (!merged.empty() && r.a - merged.back().b < 0.5 * h)
            merged.back().b = std::max(merged.back().b, r.b);
        else
            merged.push_back(r);
    }
    if (merged.size() > 1 && merged.front().a + two_pi - merged.back().b < 0.5 * h) {
        merged.back().b = std::max(merged.back().b, merged.front().b + two_pi);
        merged.erase(merged.begin());
        if (merged.back().a >= two_pi) {
            merged.back().a -= two_pi;
            merged.back().b -= two_pi;
        }
        std::sort(merged.begin(), merged.end(), [](const Arc& x, const Arc& y) { return x.a < y.a; });
    }
    out.intervals = std::move(merged);

    const double nd = static_cast<double>(n);
    out.min_gap = two_pi;
    for (std::size_t i = 0; i < out.intervals.size(); ++i) {
        out.max_length = std::max(out.max_length, out.intervals[i].length());
        const Arc& cur = out.intervals[i];
        const Arc& next = out.intervals[(i + 1) % out.intervals.size()];
        double gap = next.a - cur.b;
        if (i + 1 == out.intervals.size()) gap += two_pi;
        out.min_gap = std::min(out.min_gap, gap);
    }
    out.count_ok = static_cast<double>(out.count()) <= cfg.k1 * cfg.gamma * nd;
    out.length_ok = out.max_length <= cfg.k2 / nd;
    out.gap_ok = out.intervals.empty() || out.min_gap >= cfg.k3 / nd;
    return out;
}

inline BadIntervalSet detect_bad_intervals(const std::function<double(double)>& c, std::size_t n, double delta,
                                           std::size_t grid_multiplier, const BadIntervalConfig& cfg = {})
{
    BadIntervalSet s = scan_bad_intervals(c, n, delta, grid_multiplier, cfg);
    if (!s.valid()) {
        const double nd = static_cast<double>(n);
        throw validation_failure("bad-interval conditions failed",
                                 {{"count", static_cast<double>(s.count())},
                                  {"count_limit", cfg.k1 * cfg.gamma * nd},
                                  {"max_length", s.max_length},
                                  {"length_limit", cfg.k2 / nd},
                                  {"min_gap", s.min_gap},
                                  {"gap_limit", cfg.k3 / nd},
                                  {"whole_circle", s.whole_circle ? 1.0 : 0.0}});
    }
    return s;
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_BAD_INTERVALS_HPP
