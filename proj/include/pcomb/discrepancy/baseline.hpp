#ifndef PCOMB_DISCREPANCY_BASELINE_HPP
#define PCOMB_DISCREPANCY_BASELINE_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "../core/random.hpp"
#include "types.hpp"

namespace pcomb {

struct BaselineSummary {
    double median_inf_norm = 0.0;
    double max_inf_norm = 0.0;
    std::size_t trials = 0;
};

// ||Ax||_inf over uniformly random sign vectors.
inline BaselineSummary random_coloring_baseline(const ConstraintSystem& sys, std::size_t trials, std::uint64_t seed)
{
    detail::require(trials > 0, "trials must be positive");
    sys.validate();
    Rng gen(seed);
    std::vector<double> norms(trials);
    Eigen::VectorXd x(static_cast<Eigen::Index>(sys.dim()));
    for (std::size_t t = 0; t < trials; ++t) {
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = random_sign(gen);
        norms[t] = inf_norm(sys.rows, x);
    }
    std::sort(norms.begin(), norms.end());
    BaselineSummary s;
    s.trials = trials;
    s.max_inf_norm = norms.back();
    s.median_inf_norm = trials % 2 ? norms[trials / 2] : 0.5 * (norms[trials / 2 - 1] + norms[trials / 2]);
    return s;
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_BASELINE_HPP
