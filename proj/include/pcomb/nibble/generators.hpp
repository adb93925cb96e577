#ifndef PCOMB_NIBBLE_GENERATORS_HPP
#define PCOMB_NIBBLE_GENERATORS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "../core/error.hpp"
#include "../core/random.hpp"
#include "graph.hpp"

namespace pcomb {

namespace detail {

// Primitive polynomials over GF(2) of degree 2m, m = 1..6 (bit i = x^i).
inline std::uint32_t primitive_polynomial(unsigned degree)
{
    switch (degree) {
    case 2: return 0b111;
    case 4: return 0b10011;
    case 6: return 0b1000011;
    case 8: return 0b100011101;
    case 10: return 0b10000001001;
    case 12: return 0b1000001010011;
    default: throw invalid_argument("no primitive polynomial tabulated for this degree");
    }
}

inline std::uint32_t gf2_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned degree)
{
    std::uint32_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> degree & 1u) a ^= poly;
    }
    return r;
}

inline std::uint32_t gf2_pow(std::uint32_t a, std::uint64_t e, std::uint32_t poly, unsigned degree)
{
    std::uint32_t r = 1;
    while (e) {
        if (e & 1u) r = gf2_mul(r, a, poly, degree);
        a = gf2_mul(a, a, poly, degree);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// Bose's construction: q = 2^m elements of Z_{q^2 - 1} with all pairwise
// differences distinct, namely {a : theta^a + theta in GF(q)} for a primitive
// theta of GF(q^2).
inline std::vector<std::uint32_t> bose_sidon_set(unsigned m)
{
    detail::require(m >= 1 && m <= 6, "bose_sidon_set supports q = 2^m with 1 <= m <= 6");
    const unsigned deg = 2 * m;
    const std::uint32_t poly = detail::primitive_polynomial(deg);
    const std::uint32_t q = 1u << m, order = q * q - 1;
    const std::uint32_t theta = 2;  // the class of x
    std::vector<std::uint32_t> out;
    std::uint32_t pw = 1;
    for (std::uint32_t a = 0; a < order; ++a) {
        const std::uint32_t s = pw ^ theta;
        if (detail::gf2_pow(s, q, poly, deg) == s) out.push_back(a);
        pw = detail::gf2_mul(pw, theta, poly, deg);
    }
    return out;
}

inline bool is_sidon_mod(const std::vector<std::uint32_t>& set, std::uint64_t modulus)
{
    std::vector<char> seen(modulus, 0);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (i == j) continue;
            const std::uint64_t d = (set[i] % modulus + modulus - set[j] % modulus) % modulus;
            if (seen[d]) return false;
            seen[d] = 1;
        }
    return true;
}

// Bipartite Cayley graph on two copies of Z_side: left a ~ right b iff
// b - a mod side lies in a randomized Bose Sidon set of size 2^m. Any two
// vertices share at most one neighbour, so there are no 4-cycles, and the
// graph is exactly 2^m-regular. Vertex labels are randomly permuted.
inline SparseGraph sidon_cayley_graph(std::size_t side, unsigned m, std::uint64_t seed)
{
    const std::uint32_t q = 1u << m, order = q * q - 1;
    detail::require(side >= 2 * static_cast<std::size_t>(order), "side must be at least 2 * (4^m - 1)");
    Rng gen(seed);
    std::uint32_t unit;
    do {
        unit = static_cast<std::uint32_t>(1 + uniform_index(gen, order - 1));
    } while (std::gcd(unit, order) != 1);
    const auto shift = static_cast<std::uint32_t>(uniform_index(gen, order));
    std::vector<std::uint32_t> b = bose_sidon_set(m);
    for (auto& x : b) x = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * unit + shift) % order);
    // Representatives in [0, order) are Sidon over the integers, hence modulo
    // any side >= 2 order.

    std::vector<Vertex> label(2 * side);
    std::iota(label.begin(), label.end(), Vertex{0});
    shuffle(label, gen);
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(side * b.size());
    for (std::size_t a = 0; a < side; ++a)
        for (std::uint32_t d : b) edges.emplace_back(label[a], label[side + (a + d) % side]);
    return SparseGraph(2 * side, edges);
}

// Configuration-model pairing of n d stubs; loops and repeated edges are
// dropped, so degrees are at most d and typically d.
inline SparseGraph random_near_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed)
{
    detail::require(d < n, "degree must be below n");
    Rng gen(seed);
    std::vector<Vertex> stubs;
    stubs.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
    shuffle(stubs, gen);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        if (stubs[i] != stubs[i + 1]) edges.emplace_back(stubs[i], stubs[i + 1]);
    return SparseGraph(n, edges);
}

// Disjoint union of `copies` cliques on `size` vertices each.
inline SparseGraph clique_union(std::size_t copies, std::size_t size)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = i + 1; j < size; ++j)
                edges.emplace_back(static_cast<Vertex>(c * size + i), static_cast<Vertex>(c * size + j));
    return SparseGraph(copies * size, edges);
}

inline SparseGraph cycle_graph(std::size_t n)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < n && n >= 3; ++i)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
    return SparseGraph(n, edges);
}

} // namespace pcomb

#endif // PCOMB_NIBBLE_GENERATORS_HPP
