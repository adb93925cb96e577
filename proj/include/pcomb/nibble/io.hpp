#ifndef PCOMB_NIBBLE_IO_HPP
#define PCOMB_NIBBLE_IO_HPP

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "../core/error.hpp"
#include "graph.hpp"
#include "independent.hpp"

namespace pcomb {

// Two 1-based vertex ids per line; '#' starts a comment. The vertex count is
// the largest id unless n is given.
inline SparseGraph read_edge_list(std::istream& in, std::size_t n = 0)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::size_t top = 0, line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        long long u = 0, v = 0;
        if (!(ls >> u)) continue;
        std::string extra;
        if (!(ls >> v) || (ls >> extra)) throw invalid_argument("edge list line " + std::to_string(line_no) + ": expected two ids");
        if (u < 1 || v < 1) throw invalid_argument("edge list line " + std::to_string(line_no) + ": ids are 1-based");
        if (u == v) throw invalid_argument("edge list line " + std::to_string(line_no) + ": self-loop");
        top = std::max<std::size_t>(top, static_cast<std::size_t>(std::max(u, v)));
        edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    }
    if (n == 0) n = top;
    if (top > n) throw invalid_argument("edge list refers to a vertex beyond n");
    return SparseGraph(n, edges);
}

inline void write_edge_list(std::ostream& out, const SparseGraph& g)
{
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

inline void write_trace_csv(std::ostream& out, const std::vector<NibbleRound>& trace)
{
    out << "round,p,selected,cleaned,added,survivors_before,survivors,max_degree,max_codegree,avg_degree,"
           "open_fraction,predicted_open,predicted_survivors,survivor_sd\n";
    for (const auto& r : trace)
        out << r.round << ',' << r.p << ',' << r.selected << ',' << r.cleaned << ',' << r.added << ','
            << r.survivors_before << ',' << r.survivors << ',' << r.max_degree << ',' << r.max_codegree << ','
            << r.avg_degree << ',' << r.open_fraction << ',' << r.predicted_open << ',' << r.predicted_survivors << ','
            << r.survivor_sd << '\n';
}

} // namespace pcomb

#endif // PCOMB_NIBBLE_IO_HPP
