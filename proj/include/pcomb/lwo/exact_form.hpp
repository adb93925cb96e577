#ifndef PCOMB_LWO_EXACT_FORM_HPP
#define PCOMB_LWO_EXACT_FORM_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "../core/error.hpp"

namespace pcomb {

using i128 = __int128;

struct WeightVector {
    std::vector<double> entries;
    bool normalized = false;
    // Optional rational backing: entries[i] == numerators[i] / denominator.
    // When present, exact computations use the integers instead of the doubles.
    std::vector<std::int64_t> numerators;
    std::int64_t denominator = 0;

    std::size_t size() const { return entries.size(); }
    bool rational() const { return denominator > 0; }

    static WeightVector raw(std::vector<double> v)
    {
        WeightVector w;
        w.entries = std::move(v);
        w.validate();
        return w;
    }

    static WeightVector unit(std::vector<double> v)
    {
        double s = 0.0;
        for (double x : v) s += x * x;
        detail::require(s > 0.0, "cannot normalize the zero vector");
        s = std::sqrt(s);
        for (double& x : v) x /= s;
        WeightVector w;
        w.entries = std::move(v);
        w.normalized = true;
        w.validate();
        return w;
    }

    static WeightVector from_rationals(std::vector<std::int64_t> num, std::int64_t den)
    {
        detail::require(den > 0, "denominator must be positive");
        WeightVector w;
        w.numerators = std::move(num);
        w.denominator = den;
        for (auto a : w.numerators) w.entries.push_back(static_cast<double>(a) / static_cast<double>(den));
        w.validate();
        return w;
    }

    void validate() const
    {
        double s = 0.0;
        for (double x : entries) {
            detail::require(std::isfinite(x), "weight entries must be finite");
            s += x * x;
        }
        if (normalized) detail::require(std::abs(std::sqrt(s) - 1.0) <= 1e-12, "normalized weight vector must have unit norm");
        if (rational()) detail::require(numerators.size() == entries.size(), "rational backing has the wrong length");
    }
};

namespace detail {

// x = mant 2^exp exactly; every finite double is of this form.
struct Dyadic {
    i128 mant = 0;
    int exp = 0;
};

inline Dyadic to_dyadic(double x)
{
    if (x == 0.0) return {};
    int e = 0;
    const double m = std::frexp(x, &e);
    Dyadic d{static_cast<i128>(static_cast<std::int64_t>(std::ldexp(m, 53))), e - 53};
    while ((d.mant & 1) == 0) {
        d.mant /= 2;
        ++d.exp;
    }
    return d;
}

inline Dyadic times(Dyadic d, std::int64_t k) { return {d.mant * k, d.exp}; }

inline int bit_length(i128 x)
{
    const auto u = static_cast<unsigned __int128>(x < 0 ? -x : x);
    const auto hi = static_cast<std::uint64_t>(u >> 64), lo = static_cast<std::uint64_t>(u);
    return hi ? 128 - std::countl_zero(hi) : 64 - std::countl_zero(lo);
}

} // namespace detail

// A linear form <X, w> with target b and radius eps, rescaled so that every
// quantity is an integer. |<X, w> - b| < eps then reads |S - target| < radius
// with no rounding anywhere.
struct ExactForm {
    std::vector<i128> weights;
    i128 target = 0;
    i128 radius = 0;
    double scale = 1.0;  // real value of one integer unit

    i128 all_minus() const
    {
        i128 s = 0;
        for (i128 w : weights) s -= w;
        return s;
    }

    bool hit(i128 sum) const
    {
        const i128 gap = sum - target;
        return radius == 0 ? gap == 0 : (gap < 0 ? -gap : gap) < radius;
    }
};

inline ExactForm make_exact_form(const WeightVector& v, double b, double eps)
{
    detail::require(std::isfinite(b) && std::isfinite(eps) && eps >= 0.0, "need finite b and eps >= 0");
    std::vector<detail::Dyadic> parts;
    if (v.rational()) {
        for (auto a : v.numerators) parts.push_back({a, 0});
        parts.push_back(detail::times(detail::to_dyadic(b), v.denominator));
        parts.push_back(detail::times(detail::to_dyadic(eps), v.denominator));
    } else {
        for (double x : v.entries) parts.push_back(detail::to_dyadic(x));
        parts.push_back(detail::to_dyadic(b));
        parts.push_back(detail::to_dyadic(eps));
    }
    int low = 0;
    bool any = false;
    for (const auto& p : parts)
        if (p.mant != 0) {
            low = any ? std::min(low, p.exp) : p.exp;
            any = true;
        }
    // Room for the sum of n terms plus the target and radius.
    const int headroom = 124 - std::bit_width(v.size() + 2);
    ExactForm f;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        i128 value = 0;
        if (p.mant != 0) {
            const int shift = p.exp - low;
            if (detail::bit_length(p.mant) + shift > headroom)
                throw size_limit_error("weights span too many binary orders for exact arithmetic");
            value = p.mant * (static_cast<i128>(1) << shift);
        }
        if (i < v.size())
            f.weights.push_back(value);
        else if (i == v.size())
            f.target = value;
        else
            f.radius = value;
    }
    f.scale = std::ldexp(1.0, low) / (v.rational() ? static_cast<double>(v.denominator) : 1.0);
    return f;
}

inline double to_double(i128 x) { return static_cast<double>(x); }

} // namespace pcomb

#endif // PCOMB_LWO_EXACT_FORM_HPP
