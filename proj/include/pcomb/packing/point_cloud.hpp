#ifndef PCOMB_PACKING_POINT_CLOUD_HPP
#define PCOMB_PACKING_POINT_CLOUD_HPP

#include <boost/random/poisson_distribution.hpp>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "../core/error.hpp"
#include "../core/random.hpp"

namespace pcomb {

enum class Space { box, sphere };

// Points stored row-major: coordinate k of point i is coords[i * d + k].
struct PointCloud {
    unsigned d = 0;
    Space space = Space::box;
    double half_side = 0.0;  // L for box clouds
    std::vector<double> coords;

    std::size_t size() const { return d ? coords.size() / d : 0; }
    const double* point(std::size_t i) const { return coords.data() + i * d; }
    double* point(std::size_t i) { return coords.data() + i * d; }

    void push_back(const double* p) { coords.insert(coords.end(), p, p + d); }

    void validate() const
    {
        detail::require(d >= 1 && coords.size() % d == 0, "point cloud shape");
        for (std::size_t i = 0; i < size(); ++i) {
            const double* p = point(i);
            if (space == Space::box) {
                for (unsigned k = 0; k < d; ++k)
                    detail::require(std::isfinite(p[k]) && std::abs(p[k]) <= half_side, "box point outside [-L, L]^d");
            } else {
                double s = 0.0;
                for (unsigned k = 0; k < d; ++k) s += p[k] * p[k];
                detail::require(std::abs(std::sqrt(s) - 1.0) <= 1e-12, "sphere point off the unit sphere");
            }
        }
    }
};

inline double squared_distance(const double* a, const double* b, unsigned d)
{
    double s = 0.0;
    for (unsigned k = 0; k < d; ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return s;
}

inline constexpr double max_expected_points = 1e7;

// Poisson(lambda (2L)^d) many i.i.d. uniform points of [-L, L]^d.
inline PointCloud sample_poisson_box(unsigned d, double intensity, double half_side, std::uint64_t seed)
{
    detail::require(d >= 1, "dimension must be positive");
    detail::require(intensity >= 0.0 && half_side > 0.0, "need intensity >= 0 and L > 0");
    const double mean = intensity * std::pow(2.0 * half_side, static_cast<double>(d));
    if (mean > max_expected_points) throw size_limit_error("expected point count above 1e7");
    PointCloud c;
    c.d = d;
    c.half_side = half_side;
    if (mean == 0.0) return c;
    Rng gen(seed);
    const auto count = boost::random::poisson_distribution<std::uint64_t, double>(mean)(gen);
    c.coords.resize(count * d);
    for (double& x : c.coords) x = half_side * (2.0 * uniform01(gen) - 1.0);
    return c;
}

// Normalized Gaussian vectors: uniform on S^{d-1}.
inline PointCloud sample_sphere(unsigned d, std::size_t count, std::uint64_t seed)
{
    detail::require(d >= 2, "sphere sampling needs d >= 2");
    PointCloud c;
    c.d = d;
    c.space = Space::sphere;
    c.coords.resize(count * d);
    Rng gen(seed);
    for (std::size_t i = 0; i < count; ++i) {
        double* p = c.point(i);
        double s = 0.0;
        do {
            s = 0.0;
            for (unsigned k = 0; k < d; ++k) {
                p[k] = standard_normal(gen);
                s += p[k] * p[k];
            }
        } while (s == 0.0);
        s = std::sqrt(s);
        for (unsigned k = 0; k < d; ++k) p[k] /= s;
    }
    return c;
}

// One point per row, comma separated.
inline void write_point_csv(std::ostream& out, const PointCloud& c)
{
    const auto old = out.precision(17);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (unsigned k = 0; k < c.d; ++k) out << (k ? "," : "") << c.point(i)[k];
        out << '\n';
    }
    out.precision(old);
}

inline PointCloud read_point_csv(std::istream& in, Space space = Space::box, double half_side = 0.0)
{
    PointCloud c;
    c.space = space;
    c.half_side = half_side;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw invalid_argument("point csv line " + std::to_string(line_no) + ": bad number");
            }
            while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
            if (used != cell.size()) throw invalid_argument("point csv line " + std::to_string(line_no) + ": bad number");
            row.push_back(v);
        }
        if (c.d == 0) c.d = static_cast<unsigned>(row.size());
        if (row.size() != c.d || row.empty()) throw invalid_argument("point csv line " + std::to_string(line_no) + ": wrong arity");
        c.coords.insert(c.coords.end(), row.begin(), row.end());
    }
    if (space == Space::box && c.half_side == 0.0)
        for (double x : c.coords) c.half_side = std::max(c.half_side, std::abs(x));
    return c;
}

} // namespace pcomb

#endif // PCOMB_PACKING_POINT_CLOUD_HPP
