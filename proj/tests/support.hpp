#ifndef PCOMB_TESTS_SUPPORT_HPP
#define PCOMB_TESTS_SUPPORT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pcomb/core/random.hpp"
#include "pcomb/discrepancy/generators.hpp"
#include "pcomb/discrepancy/types.hpp"

namespace pcomb::testing {

inline Hypergraph random_hypergraph(std::size_t n, std::size_t edges, std::size_t d, std::uint64_t seed)
{
    return random_bounded_degree_hypergraph(n, edges, d, seed);
}

// Brute-force min over all 2^n colorings of the max edge sum.
inline long exhaustive_hypergraph_discrepancy(const Hypergraph& h)
{
    const std::size_t n = h.vertex_count();
    long best = -1;
    SignedColoring f(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) f[i] = (mask >> i & 1) ? 1 : -1;
        const long d = h.discrepancy(f);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

using pcomb::fano_plane;
using pcomb::random_sign_matrix;

} // namespace pcomb::testing

#endif // PCOMB_TESTS_SUPPORT_HPP
