#ifndef PCOMB_DISCREPANCY_GENERATORS_HPP
#define PCOMB_DISCREPANCY_GENERATORS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "../core/random.hpp"
#include "types.hpp"

namespace pcomb {

inline Eigen::MatrixXd random_sign_matrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed)
{
    Rng gen(seed);
    Eigen::MatrixXd a(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = random_sign(gen);
    return a;
}

// Every vertex joins between 0 and d distinct edges chosen at random, so the
// maximum degree is at most d.
inline Hypergraph random_bounded_degree_hypergraph(std::size_t n, std::size_t edges, std::size_t d, std::uint64_t seed)
{
    Rng gen(seed);
    std::vector<std::vector<std::size_t>> e(edges);
    std::vector<std::size_t> ids(edges);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t deg = std::min(edges, static_cast<std::size_t>(uniform_index(gen, d + 1)));
        for (std::size_t k = 0; k < deg; ++k) {
            const std::size_t j = k + uniform_index(gen, edges - k);
            std::swap(ids[k], ids[j]);
            e[ids[k]].push_back(v);
        }
    }
    return Hypergraph(n, std::move(e));
}

inline Hypergraph fano_plane()
{
    return Hypergraph(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_GENERATORS_HPP
