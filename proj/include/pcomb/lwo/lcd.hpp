#ifndef PCOMB_LWO_LCD_HPP
#define PCOMB_LWO_LCD_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "../core/error.hpp"
#include "exact_form.hpp"

namespace pcomb {

// Euclidean distance from x to the nearest point of Z^n other than 0.
inline double distance_to_nonzero_lattice(const std::vector<double>& x)
{
    double sq = 0.0, biggest = 0.0;
    bool all_zero = true;
    for (double t : x) {
        const double r = std::nearbyint(t);
        sq += (t - r) * (t - r);
        all_zero = all_zero && r == 0.0;
        biggest = std::max(biggest, std::abs(t));
    }
    if (!all_zero) return std::sqrt(sq);
    // Rounding gives 0: move the largest coordinate to the nearest +-1 instead.
    return std::sqrt(std::max(0.0, sq - biggest * biggest + (1.0 - biggest) * (1.0 - biggest)));
}

struct LcdResult {
    bool found = false;       // false: no qualifying phi up to phi_max
    double value = 0.0;       // D_alpha(v) when found
    double threshold = 0.0;   // sqrt(alpha n)
    double phi_max = 0.0;
    double grid_step = 0.0;
    std::vector<std::pair<double, double>> margin;  // (phi, distance - threshold) at each scanned phi
};

// D_alpha(v) = inf{phi > 0 : d(phi v, Z^n \ {0}) <= sqrt(alpha n)}, by a scan
// with the given step followed by bisection to 1e-9. For unit v the distance
// is 1-Lipschitz in phi, so a dip below the threshold is missed only if it
// stays above threshold - grid_step / 2 everywhere.
inline LcdResult lcd(const WeightVector& v, double alpha, double phi_max, double grid_step)
{
    detail::require(v.normalized, "lcd needs a unit vector");
    detail::require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    detail::require(phi_max > 0.0 && grid_step > 0.0, "need phi_max > 0 and grid_step > 0");
    LcdResult r;
    r.threshold = std::sqrt(alpha * static_cast<double>(v.size()));
    r.phi_max = phi_max;
    r.grid_step = grid_step;
    std::vector<double> x(v.size());
    auto dist = [&](double phi) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = phi * v.entries[i];
        return distance_to_nonzero_lattice(x);
    };
    double prev = 0.0;
    for (std::size_t k = 1;; ++k) {
        const double phi = std::min(phi_max, static_cast<double>(k) * grid_step);
        const double m = dist(phi) - r.threshold;
        r.margin.emplace_back(phi, m);
        if (m <= 0.0) {
            double lo = prev, hi = phi;
            while (hi - lo > 1e-9) {
                const double mid = 0.5 * (lo + hi);
                (dist(mid) <= r.threshold ? hi : lo) = mid;
            }
            r.found = true;
            r.value = hi;
            return r;
        }
        if (phi >= phi_max) return r;
        prev = phi;
    }
}

} // namespace pcomb

#endif // PCOMB_LWO_LCD_HPP
