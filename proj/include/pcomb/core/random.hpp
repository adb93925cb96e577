#ifndef PCOMB_CORE_RANDOM_HPP
#define PCOMB_CORE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace pcomb {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept
{
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept
{
    return derive_seed(derive_seed(seed, a), b);
}

// Uniform double in [0,1) from a 64-bit hash; stateless per-item coins.
constexpr double unit_from_bits(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

template <class Gen>
double standard_normal(Gen& gen)
{
    // Box-Muller on the raw generator so results do not depend on the
    // standard library's normal_distribution implementation.
    constexpr double two_pi = 6.283185307179586476925286766559;
    double u1;
    do {
        u1 = unit_from_bits(gen());
    } while (u1 <= 0.0);
    const double u2 = unit_from_bits(gen());
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

template <class Gen>
double uniform01(Gen& gen)
{
    return unit_from_bits(gen());
}

template <class Gen>
int random_sign(Gen& gen)
{
    return (gen() >> 63) ? 1 : -1;
}

// Uniform integer in [0, n) by rejection.
template <class Gen>
std::uint64_t uniform_index(Gen& gen, std::uint64_t n)
{
    const std::uint64_t limit = n ? (~std::uint64_t{0} - (~std::uint64_t{0} % n)) : 0;
    std::uint64_t r;
    do {
        r = gen();
    } while (r >= limit);
    return r % n;
}

template <class Gen, class Vec>
void shuffle(Vec& v, Gen& gen)
{
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = uniform_index(gen, i);
        using std::swap;
        swap(v[i - 1], v[j]);
    }
}

} // namespace pcomb

#endif // PCOMB_CORE_RANDOM_HPP
