#ifndef PCOMB_DISCREPANCY_ITERATED_HPP
#define PCOMB_DISCREPANCY_ITERATED_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

#include "sticky_walk.hpp"

namespace pcomb {

// Rows to constrain in one round, with absolute budgets on <x - x_start, row>
// restricted to the active coordinates.
struct RoundPlan {
    std::vector<Eigen::Index> rows;
    Eigen::VectorXd budgets;
};

struct RoundRecord {
    std::size_t round = 0;
    std::size_t active = 0;
    std::size_t constrained_rows = 0;
    std::size_t frozen = 0;
    std::size_t attempts = 1;
    double max_deviation = 0.0;  // max_j |<x_end - x_start, a_j>| over all rows
    double max_budget = 0.0;
};

struct IteratedOptions {
    double step_scale = 0.125;  // step = max(step_scale/sqrt(n_r), step_floor)
    double step_floor = 0.0;
    std::size_t step_floor_from = 0;  // the floor applies once n_r reaches this
    double max_time = 4.0;
    std::size_t stop_active = 0;   // stop once at most this many coordinates are free
    std::size_t max_rounds = 200;
    double min_freeze_fraction = 0.0;  // a round freezing less is retried
    std::size_t round_retries = 0;
    double relax_factor = 1.25;  // budget growth per retry
};

struct IteratedResult {
    Eigen::VectorXd x;
    std::vector<RoundRecord> rounds;
    std::vector<Eigen::Index> active;
    bool stalled = false;
};

// Repeated partial coloring on the shrinking set of free coordinates. The
// planner sees the active coordinates and the current point and returns the
// constraints for the round.
template <class Gen, class Planner>
IteratedResult iterate_partial_colorings(const Eigen::MatrixXd& a, Eigen::VectorXd x, Planner&& plan, Gen& gen,
                                         const IteratedOptions& opt = {})
{
    IteratedResult res;
    auto collect_active = [&] {
        std::vector<Eigen::Index> act;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (std::abs(x[i]) < 1.0 - 1e-12) act.push_back(i);
        return act;
    };
    std::vector<Eigen::Index> active = collect_active();

    while (active.size() > opt.stop_active && res.rounds.size() < opt.max_rounds) {
        const auto nr = static_cast<Eigen::Index>(active.size());
        RoundPlan p = plan(active, std::as_const(x));
        const auto rows = static_cast<Eigen::Index>(p.rows.size());

        Eigen::MatrixXd sub(rows, nr);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < nr; ++c) sub(r, c) = a(p.rows[static_cast<std::size_t>(r)], active[static_cast<std::size_t>(c)]);
        Eigen::VectorXd xr(nr);
        for (Eigen::Index c = 0; c < nr; ++c) xr[c] = x[active[static_cast<std::size_t>(c)]];

        WalkOptions w;
        w.step_size = opt.step_scale / std::sqrt(static_cast<double>(nr));
        if (active.size() >= opt.step_floor_from) w.step_size = std::max(w.step_size, opt.step_floor);
        w.max_time = opt.max_time;

        WalkOutcome best;
        std::size_t tries = 0;
        Eigen::VectorXd budgets = p.budgets;
        for (;;) {
            ++tries;
            WalkOutcome walk = sticky_walk(sub, budgets, xr, gen, w);
            const bool enough = static_cast<double>(walk.newly_frozen) >= opt.min_freeze_fraction * static_cast<double>(nr);
            if (tries == 1 || walk.newly_frozen > best.newly_frozen) best = std::move(walk);
            if (enough || tries > opt.round_retries) break;
            budgets *= opt.relax_factor;
        }

        Eigen::VectorXd before = x;
        for (Eigen::Index c = 0; c < nr; ++c) x[active[static_cast<std::size_t>(c)]] = best.x[c];

        RoundRecord rec;
        rec.round = res.rounds.size() + 1;
        rec.active = active.size();
        rec.constrained_rows = p.rows.size();
        rec.frozen = best.newly_frozen;
        rec.attempts = tries;
        rec.max_deviation = a.rows() ? (a * (x - before)).cwiseAbs().maxCoeff() : 0.0;
        rec.max_budget = budgets.size() ? budgets.maxCoeff() : 0.0;
        res.rounds.push_back(rec);

        if (best.newly_frozen == 0) {
            res.stalled = true;
            break;
        }
        active = collect_active();
    }
    res.x = std::move(x);
    res.active = std::move(active);
    return res;
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_ITERATED_HPP
