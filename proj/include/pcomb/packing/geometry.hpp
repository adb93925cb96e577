#ifndef PCOMB_PACKING_GEOMETRY_HPP
#define PCOMB_PACKING_GEOMETRY_HPP

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>

#include "../core/error.hpp"

namespace pcomb {

inline double log_unit_ball_volume(unsigned d)
{
    const double h = 0.5 * static_cast<double>(d);
    return h * std::log(std::numbers::pi) - std::lgamma(h + 1.0);
}

inline double ball_volume(unsigned d, double r)
{
    return std::exp(log_unit_ball_volume(d) + static_cast<double>(d) * std::log(r));
}

// Radius of the d-ball of volume one.
inline double unit_ball_radius(unsigned d)
{
    detail::require(d >= 1, "dimension must be positive");
    return std::exp(-log_unit_ball_volume(d) / static_cast<double>(d));
}

// Volume of the intersection of two d-balls of radius r whose centres are
// dist apart: V_d r^d I_{1 - dist^2 / 4r^2}((d + 1) / 2, 1 / 2).
inline double ball_intersection_volume(unsigned d, double r, double dist)
{
    detail::require(d >= 1 && r > 0 && dist >= 0, "need d >= 1, r > 0, dist >= 0");
    if (dist >= 2 * r) return 0.0;
    const double h = dist / (2 * r);
    return ball_volume(d, r) * boost::math::ibeta(0.5 * (d + 1), 0.5, 1.0 - h * h);
}

// Normalized cap measure s_d(theta) on S^{d-1}, the fraction of the sphere
// within angle theta of a pole. For theta <= pi/2 this is
// I_{sin^2 theta}((d - 1) / 2, 1 / 2) / 2.
inline double cap_volume(unsigned d, double theta)
{
    detail::require(d >= 2, "cap_volume needs d >= 2");
    detail::require(theta >= 0.0 && theta <= std::numbers::pi, "theta must lie in [0, pi]");
    if (d == 2) return theta / std::numbers::pi;
    if (theta > 0.5 * std::numbers::pi) return 1.0 - cap_volume(d, std::numbers::pi - theta);
    const double s = std::sin(theta);
    return 0.5 * boost::math::ibeta(0.5 * (d - 1), 0.5, s * s);
}

} // namespace pcomb

#endif // PCOMB_PACKING_GEOMETRY_HPP
