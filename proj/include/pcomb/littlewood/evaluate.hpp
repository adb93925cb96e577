#ifndef PCOMB_LITTLEWOOD_EVALUATE_HPP
#define PCOMB_LITTLEWOOD_EVALUATE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <vector>

#include "../core/error.hpp"

namespace pcomb {

// P(e^{2 pi i j / N}) for j = 0..N-1, P(z) = sum_k coeffs[k] z^k. One sincos
// per grid point; Horner on the unit circle is backward stable, so the error
// stays at a few ulps times sum |coeffs| * degree.
template <class T>
std::vector<std::complex<double>> evaluate_on_circle(const std::vector<T>& coeffs, std::size_t grid_points)
{
    detail::require(!coeffs.empty(), "evaluate_on_circle needs coefficients");
    detail::require(grid_points >= coeffs.size(), "grid_points must be at least degree + 1");
    std::vector<std::complex<double>> out(grid_points);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(grid_points);
    for (std::size_t j = 0; j < grid_points; ++j) {
        const std::complex<double> z = std::polar(1.0, step * static_cast<double>(j));
        std::complex<double> acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + std::complex<double>(coeffs[k]);
        out[j] = acc;
    }
    return out;
}

// Same value at a single angle.
template <class T>
std::complex<double> evaluate_at_angle(const std::vector<T>& coeffs, double theta)
{
    const std::complex<double> z = std::polar(1.0, theta);
    std::complex<double> acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + std::complex<double>(coeffs[k]);
    return acc;
}

// sin(k x) for k = 0..kmax, by sin((k+1)x) = 2 cos x sin(kx) - sin((k-1)x).
inline void fill_sines(double x, std::size_t kmax, std::vector<double>& out)
{
    out.resize(kmax + 1);
    out[0] = 0.0;
    if (kmax == 0) return;
    const double s1 = std::sin(x), c2 = 2.0 * std::cos(x);
    out[1] = s1;
    for (std::size_t k = 2; k <= kmax; ++k) out[k] = c2 * out[k - 1] - out[k - 2];
}

inline void fill_cosines(double x, std::size_t kmax, std::vector<double>& out)
{
    out.resize(kmax + 1);
    out[0] = 1.0;
    if (kmax == 0) return;
    const double c1 = std::cos(x), c2 = 2.0 * c1;
    out[1] = c1;
    for (std::size_t k = 2; k <= kmax; ++k) out[k] = c2 * out[k - 1] - out[k - 2];
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_EVALUATE_HPP
