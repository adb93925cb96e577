#ifndef PCOMB_DISCREPANCY_LOVETT_MEKA_HPP
#define PCOMB_DISCREPANCY_LOVETT_MEKA_HPP

#include <cmath>
#include <cstdint>

#include "sticky_walk.hpp"
#include "types.hpp"

namespace pcomb {

// Sum_j exp(-c_j^2/16).
inline double budget_mass(const std::vector<double>& budgets)
{
    double s = 0.0;
    for (double c : budgets) s += std::exp(-c * c / 16.0);
    return s;
}

inline bool budgets_admissible(const std::vector<double>& budgets)
{
    return budget_mass(budgets) <= (1.0 / 16.0) * (1.0 + 1e-12);
}

struct LovettMekaOptions {
    double step_size = 0.0;  // 0 selects 1/(8 sqrt(n))
    double max_time = 4.0;
};

// Returns x with |<x - x0, a_j>| <= c_j sqrt(n) for all j and at least n/4
// coordinates at +-1 (frozen ones in x0 included). Throws retryable_failure
// when the walk ends with too few frozen coordinates.
inline PartialColoring lovett_meka_partial_coloring(const ConstraintSystem& sys, const PartialColoring& x0,
                                                    std::uint64_t seed, LovettMekaOptions opt = {})
{
    sys.validate();
    const std::size_t n = sys.dim();
    detail::require(x0.size() == n, "x0 length must equal the system dimension");
    detail::require(budgets_admissible(sys.budgets), "budget condition sum exp(-c_j^2/16) <= 1/16 violated");
    detail::require(opt.max_time > 0, "max_time must be positive");

    const double sqrt_n = std::sqrt(static_cast<double>(n));
    Eigen::VectorXd b(static_cast<Eigen::Index>(sys.size()));
    for (std::size_t j = 0; j < sys.size(); ++j) b[static_cast<Eigen::Index>(j)] = sys.budgets[j] * sqrt_n;

    WalkOptions w;
    w.step_size = opt.step_size > 0 ? opt.step_size : 1.0 / (8.0 * sqrt_n);
    w.max_time = opt.max_time;
    Rng gen(seed);
    WalkOutcome walk = sticky_walk(sys.rows, b, x0.values, gen, w);

    PartialColoring x(walk.x);
    if (4 * x.frozen_count() < n)
        throw retryable_failure("walk froze " + std::to_string(x.frozen_count()) + " of " + std::to_string(n) +
                                " coordinates; rerun with a new seed");
    return x;
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_LOVETT_MEKA_HPP
