#ifndef PCOMB_PACKING_PACKING_GRAPH_HPP
#define PCOMB_PACKING_PACKING_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "../core/error.hpp"
#include "../nibble/graph.hpp"
#include "point_cloud.hpp"

namespace pcomb {

// Uniform grid of cubes of the given side over the first few coordinates of
// [-L, L]^d. Points in the 3^g cells around a query's cell include every
// point within one cell side of it.
class CellGrid {
public:
    CellGrid(const PointCloud& c, double side) : cloud_(&c), side_(side)
    {
        detail::require(side > 0, "cell side must be positive");
        detail::require(c.space == Space::box, "cell grid needs a box cloud");
        per_axis_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * c.half_side / side)));
        dims_ = 0;
        std::size_t cells = 1;
        while (dims_ < std::min(c.d, 4u) && cells * per_axis_ <= 4'000'000) {
            cells *= per_axis_;
            ++dims_;
        }
        cells_.resize(cells);
    }

    void insert(std::size_t i) { cells_[cell_of(cloud_->point(i))].push_back(static_cast<std::uint32_t>(i)); }

    template <class F>
    void for_each_near(const double* p, F&& f) const
    {
        std::size_t coord[4];
        for (unsigned k = 0; k < dims_; ++k) coord[k] = axis(p[k]);
        visit(0, 0, coord, f);
    }

private:
    std::size_t axis(double x) const
    {
        const double t = std::floor((x + cloud_->half_side) / side_);
        return static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(per_axis_ - 1)));
    }

    std::size_t cell_of(const double* p) const
    {
        std::size_t id = 0;
        for (unsigned k = 0; k < dims_; ++k) id = id * per_axis_ + axis(p[k]);
        return id;
    }

    template <class F>
    void visit(unsigned k, std::size_t id, const std::size_t* coord, F& f) const
    {
        if (k == dims_) {
            for (std::uint32_t j : cells_[id]) f(static_cast<std::size_t>(j));
            return;
        }
        const std::size_t lo = coord[k] ? coord[k] - 1 : 0, hi = std::min(coord[k] + 1, per_axis_ - 1);
        for (std::size_t c = lo; c <= hi; ++c) visit(k + 1, id * per_axis_ + c, coord, f);
    }

    const PointCloud* cloud_;
    double side_;
    std::size_t per_axis_ = 1;
    unsigned dims_ = 0;
    std::vector<std::vector<std::uint32_t>> cells_;
};

struct PackingGraph {
    SparseGraph graph;
    PointCloud points;                // survivors of pruning, in original order
    std::vector<std::size_t> source;  // index of each survivor in the input cloud
    std::size_t pruned = 0;
    double radius = 0.0;
};

// x ~ y iff |x - y| < 2 radius. Before that, a point closer than prune_floor
// to an earlier surviving point is deleted (prune_floor = 0 keeps all).
inline PackingGraph build_packing_graph(const PointCloud& cloud, double radius, double prune_floor = 0.0)
{
    detail::require(radius > 0, "radius must be positive");
    detail::require(prune_floor >= 0 && prune_floor <= 2 * radius, "prune floor must lie in [0, 2 radius]");
    const unsigned d = cloud.d;
    PackingGraph out;
    out.radius = radius;
    out.points.d = d;
    out.points.half_side = cloud.half_side;
    out.points.space = cloud.space;

    if (prune_floor > 0) {
        CellGrid kept(cloud, 2 * radius);
        const double f2 = prune_floor * prune_floor;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            bool close = false;
            kept.for_each_near(cloud.point(i), [&](std::size_t j) {
                if (!close && squared_distance(cloud.point(i), cloud.point(j), d) < f2) close = true;
            });
            if (close) {
                ++out.pruned;
                continue;
            }
            kept.insert(i);
            out.source.push_back(i);
        }
    } else {
        out.source.resize(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) out.source[i] = i;
    }
    for (std::size_t i : out.source) out.points.push_back(cloud.point(i));

    CellGrid grid(out.points, 2 * radius);
    for (std::size_t i = 0; i < out.points.size(); ++i) grid.insert(i);
    const double r2 = 4 * radius * radius;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < out.points.size(); ++i)
        grid.for_each_near(out.points.point(i), [&](std::size_t j) {
            if (j > i && squared_distance(out.points.point(i), out.points.point(j), d) < r2)
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        });
    out.graph = SparseGraph(out.points.size(), edges);
    return out;
}

} // namespace pcomb

#endif // PCOMB_PACKING_PACKING_GRAPH_HPP
