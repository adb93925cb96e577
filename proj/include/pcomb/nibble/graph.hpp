#ifndef PCOMB_NIBBLE_GRAPH_HPP
#define PCOMB_NIBBLE_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "../core/error.hpp"

namespace pcomb {

using Vertex = std::uint32_t;

// Simple undirected graph with sorted neighbor lists. Duplicate edges are
// merged; self-loops are rejected.
class SparseGraph {
public:
    SparseGraph() = default;
    explicit SparseGraph(std::size_t n) : adj_(n) {}

    SparseGraph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) : adj_(n)
    {
        for (auto [u, v] : edges) {
            detail::require(u < n && v < n, "edge endpoint out of range");
            detail::require(u != v, "self-loops are not allowed");
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
    }

    std::size_t size() const { return adj_.size(); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }

    std::size_t edge_count() const
    {
        std::size_t s = 0;
        for (const auto& a : adj_) s += a.size();
        return s / 2;
    }

    bool adjacent(Vertex u, Vertex v) const { return std::binary_search(adj_[u].begin(), adj_[u].end(), v); }

    std::size_t max_degree() const
    {
        if (!max_degree_) {
            std::size_t d = 0;
            for (const auto& a : adj_) d = std::max(d, a.size());
            max_degree_ = d;
        }
        return *max_degree_;
    }

    // Largest number of common neighbours over pairs of distinct vertices,
    // counted through 2-paths.
    std::size_t max_codegree() const
    {
        if (!max_codegree_) max_codegree_ = compute_codegree(nullptr);
        return *max_codegree_;
    }

    // Same statistic on the subgraph induced by alive vertices.
    std::size_t max_codegree(const std::vector<char>& alive) const { return compute_codegree(&alive); }

    std::vector<std::pair<Vertex, Vertex>> edges() const
    {
        std::vector<std::pair<Vertex, Vertex>> e;
        for (Vertex u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) e.emplace_back(u, v);
        return e;
    }

private:
    std::size_t compute_codegree(const std::vector<char>* alive) const
    {
        const std::size_t n = adj_.size();
        std::vector<std::uint32_t> count(n, 0);
        std::vector<Vertex> touched;
        std::size_t best = 0;
        for (Vertex u = 0; u < n; ++u) {
            if (alive && !(*alive)[u]) continue;
            for (Vertex w : adj_[u]) {
                if (alive && !(*alive)[w]) continue;
                for (Vertex v : adj_[w]) {
                    if (v <= u || (alive && !(*alive)[v])) continue;
                    if (count[v]++ == 0) touched.push_back(v);
                }
            }
            for (Vertex v : touched) {
                best = std::max<std::size_t>(best, count[v]);
                count[v] = 0;
            }
            touched.clear();
        }
        return best;
    }

    std::vector<std::vector<Vertex>> adj_;
    mutable std::optional<std::size_t> max_degree_;
    mutable std::optional<std::size_t> max_codegree_;
};

struct GraphStats {
    std::size_t n = 0;
    std::size_t edges = 0;
    std::size_t max_degree = 0;
    std::size_t max_codegree = 0;
    double avg_degree = 0.0;
};

inline GraphStats graph_stats(const SparseGraph& g)
{
    GraphStats s;
    s.n = g.size();
    s.edges = g.edge_count();
    s.max_degree = g.max_degree();
    s.max_codegree = g.max_codegree();
    s.avg_degree = s.n ? 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.n) : 0.0;
    return s;
}

// Exact check: no edge inside the set, no repeated or out-of-range vertex.
inline bool is_independent(const SparseGraph& g, const std::vector<Vertex>& set)
{
    std::vector<char> in(g.size(), 0);
    for (Vertex v : set) {
        if (v >= g.size() || in[v]) return false;
        in[v] = 1;
    }
    for (Vertex v : set)
        for (Vertex w : g.neighbors(v))
            if (in[w]) return false;
    return true;
}

} // namespace pcomb

#endif // PCOMB_NIBBLE_GRAPH_HPP
