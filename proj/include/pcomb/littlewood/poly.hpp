#ifndef PCOMB_LITTLEWOOD_POLY_HPP
#define PCOMB_LITTLEWOOD_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "../core/error.hpp"
#include "evaluate.hpp"

namespace pcomb {

// Coefficients eps_{-2n}..eps_{2n}; P(z) = sum_j eps_{j-2n} z^j has degree 4n
// and f(x) = e^{-2n i x} P(e^{ix}) = eps_0 + 2 sum_C eps_k cos kx + 2i sum_S eps_k sin kx.
class LittlewoodPoly {
public:
    LittlewoodPoly() = default;
    LittlewoodPoly(std::size_t n, double gamma, std::vector<int> eps_centered, std::vector<std::size_t> cos_freqs)
        : n_(n), gamma_(gamma), eps_(std::move(eps_centered)), cos_(std::move(cos_freqs))
    {
        detail::require(eps_.size() == 4 * n_ + 1, "need 4n+1 coefficients");
        std::sort(cos_.begin(), cos_.end());
        std::vector<char> in_c(2 * n_ + 1, 0);
        for (std::size_t k : cos_) {
            detail::require(k >= 1 && k <= 2 * n_, "cosine frequency outside [1,2n]");
            in_c[k] = 1;
        }
        for (std::size_t k = 1; k <= 2 * n_; ++k)
            if (!in_c[k]) sin_.push_back(k);
        for (int e : eps_) detail::require(e == 1 || e == -1, "Littlewood coefficients must be +-1");
        for (std::size_t k = 1; k <= 2 * n_; ++k) {
            const int pos = eps(static_cast<long>(k)), neg = eps(-static_cast<long>(k));
            detail::require(in_c[k] ? pos == neg : pos == -neg, "coefficient symmetry violated");
        }
    }

    std::size_t n() const { return n_; }
    double gamma() const { return gamma_; }
    std::size_t degree() const { return 4 * n_; }
    int eps(long k) const { return eps_[static_cast<std::size_t>(k + static_cast<long>(2 * n_))]; }
    const std::vector<int>& coefficients() const { return eps_; }  // a_j = eps_{j-2n}
    const std::vector<std::size_t>& cosine_frequencies() const { return cos_; }
    const std::vector<std::size_t>& sine_frequencies() const { return sin_; }

    // f(x) from the cosine/sine form, independent of the coefficient array.
    std::complex<double> f(double x) const
    {
        double re = eps(0), im = 0.0;
        for (std::size_t k : cos_) re += 2.0 * eps(static_cast<long>(k)) * std::cos(static_cast<double>(k) * x);
        for (std::size_t k : sin_) im += 2.0 * eps(static_cast<long>(k)) * std::sin(static_cast<double>(k) * x);
        return {re, im};
    }

private:
    std::size_t n_ = 0;
    double gamma_ = 0.0;
    std::vector<int> eps_;
    std::vector<std::size_t> cos_, sin_;
};

struct FlatnessReport {
    double min_abs = 0.0;
    double max_abs = 0.0;
    double ratio = 0.0;     // max/min, infinite when min is 0
    double argmin = 0.0;    // angle in [0, 2 pi)
    double argmax = 0.0;
    double mean_square = 0.0;
    std::size_t grid_points = 0;
};

// Extrema of |P| on the grid of grid_multiplier * max(degree, 1) points.
template <class T>
FlatnessReport flatness_report(const std::vector<T>& coeffs, std::size_t grid_multiplier)
{
    detail::require(grid_multiplier >= 1, "grid_multiplier must be positive");
    const std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
    const std::size_t grid = std::max(grid_multiplier * std::max<std::size_t>(deg, 1), coeffs.size());
    const auto vals = evaluate_on_circle(coeffs, grid);
    FlatnessReport r;
    r.grid_points = grid;
    r.min_abs = std::abs(vals[0]);
    r.max_abs = r.min_abs;
    double sq = 0.0;
    for (std::size_t j = 0; j < grid; ++j) {
        const double a = std::abs(vals[j]);
        sq += a * a;
        if (a < r.min_abs) {
            r.min_abs = a;
            r.argmin = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
        }
        if (a > r.max_abs) {
            r.max_abs = a;
            r.argmax = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
        }
    }
    r.mean_square = sq / static_cast<double>(grid);
    r.ratio = r.min_abs > 0 ? r.max_abs / r.min_abs : std::numeric_limits<double>::infinity();
    return r;
}

inline FlatnessReport flatness_report(const LittlewoodPoly& p, std::size_t grid_multiplier)
{
    return flatness_report(p.coefficients(), grid_multiplier);
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_POLY_HPP
