#ifndef PCOMB_DISCREPANCY_BECK_FIALA_HPP
#define PCOMB_DISCREPANCY_BECK_FIALA_HPP

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "types.hpp"

namespace pcomb {

// Iterative rounding. A fractional coloring starts at 0; while some edge has
// more than d floating vertices, move along a null vector of those edges
// until a coordinate reaches +-1. Every edge keeps sum 0 while it is live, and
// afterwards each of its <= d floating vertices moves by less than 2, so the
// final discrepancy is at most 2d - 1.
inline SignedColoring beck_fiala(const Hypergraph& h)
{
    const std::size_t n = h.vertex_count();
    detail::require(n >= 1, "beck_fiala needs a non-empty ground set");
    const std::size_t d = h.max_degree();
    const auto& edges = h.edges();

    std::vector<double> x(n, 0.0);
    std::vector<char> floating(n, 1);
    std::vector<std::size_t> live_count(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) live_count[e] = edges[e].size();
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t e = 0; e < edges.size(); ++e)
        for (std::size_t v : edges[e]) incident[v].push_back(e);

    std::vector<std::size_t> float_list;
    for (;;) {
        std::vector<std::size_t> active;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (live_count[e] > d) active.push_back(e);
        if (active.empty()) break;

        // |active| (d+1) < sum of live sizes <= d |floating|, so |active| + 1
        // floating columns suffice for a nonzero kernel vector.
        float_list.clear();
        for (std::size_t v = 0; v < n && float_list.size() < active.size() + 1; ++v)
            if (floating[v]) float_list.push_back(v);
        const auto k = static_cast<Eigen::Index>(active.size());
        const auto c = static_cast<Eigen::Index>(float_list.size());
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, c);
        for (Eigen::Index r = 0; r < k; ++r) {
            const auto& e = edges[active[static_cast<std::size_t>(r)]];
            for (Eigen::Index j = 0; j < c; ++j)
                if (std::binary_search(e.begin(), e.end(), float_list[static_cast<std::size_t>(j)])) m(r, j) = 1.0;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
        Eigen::VectorXd y = lu.kernel().col(0);

        double t = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < c; ++j) {
            const double yj = y[j];
            if (std::abs(yj) < 1e-14) continue;
            const double xv = x[float_list[static_cast<std::size_t>(j)]];
            t = std::min(t, yj > 0 ? (1.0 - xv) / yj : (-1.0 - xv) / yj);
        }
        bool froze = false;
        for (Eigen::Index j = 0; j < c; ++j) {
            const std::size_t v = float_list[static_cast<std::size_t>(j)];
            x[v] += t * y[j];
            if (std::abs(x[v]) >= 1.0 - 1e-9) {
                x[v] = x[v] > 0 ? 1.0 : -1.0;
                floating[v] = 0;
                froze = true;
                for (std::size_t e : incident[v]) --live_count[e];
            }
        }
        if (!froze) {
            // Numerical safety: freeze the coordinate closest to a face.
            std::size_t best = float_list[0];
            for (std::size_t v : float_list)
                if (std::abs(x[v]) > std::abs(x[best])) best = v;
            x[best] = x[best] >= 0 ? 1.0 : -1.0;
            floating[best] = 0;
            for (std::size_t e : incident[best]) --live_count[e];
        }
    }

    SignedColoring f(n);
    for (std::size_t v = 0; v < n; ++v) f[v] = x[v] >= 0 ? 1 : -1;
    return f;
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_BECK_FIALA_HPP
