#ifndef PCOMB_DISCREPANCY_SPENCER_HPP
#define PCOMB_DISCREPANCY_SPENCER_HPP

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "../core/random.hpp"
#include "iterated.hpp"
#include "types.hpp"

namespace pcomb {

enum class SpencerSchedule {
    // c = 4 sqrt(ln(16 m)) per round: the smallest uniform budget meeting the
    // sum exp(-c^2/16) <= 1/16 condition.
    gated,
    // c = kappa * max(1/2, upper normal quantile of n_r/(8m)), capped per row
    // by the room left under kappa * 2 sqrt(n).
    tuned,
};

struct SpencerOptions {
    double k_impl = 15.0;
    SpencerSchedule schedule = SpencerSchedule::tuned;
    double kappa = 1.0;
    std::size_t attempts = 4;
    std::size_t straggler_limit = 0;  // 0 selects ceil(log2 n)
    double max_time = 2.0;
};

struct SpencerResult {
    SignedColoring signs;
    double inf_norm = 0.0;
    double ratio = 0.0;  // inf_norm / sqrt(n)
    double pre_rounding_inf_norm = 0.0;
    std::size_t stragglers = 0;
    double straggler_error = 0.0;  // || A (signs - x_pre) ||_inf
    double budget_series = 0.0;    // sum over rounds of max deviation + straggler error
    std::vector<RoundRecord> rounds;
    std::size_t attempt = 0;
    bool within_bound = false;
};

inline double upper_normal_quantile(double p)
{
    if (p >= 0.5) return 0.0;
    return boost::math::quantile(boost::math::complement(boost::math::normal_distribution<double>(), p));
}

namespace detail {

template <class Gen>
SpencerResult spencer_attempt(const Eigen::MatrixXd& a, Gen& gen, const SpencerOptions& opt)
{
    const auto n = static_cast<std::size_t>(a.cols());
    const auto m = static_cast<Eigen::Index>(a.rows());
    const double md = static_cast<double>(std::max<Eigen::Index>(m, 1));
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    auto planner = [&](const std::vector<Eigen::Index>& active, const Eigen::VectorXd& x) {
        RoundPlan p;
        const double nr = static_cast<double>(active.size());
        p.rows.resize(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < m; ++j) p.rows[static_cast<std::size_t>(j)] = j;
        double c;
        if (opt.schedule == SpencerSchedule::gated) {
            c = 4.0 * std::sqrt(std::log(16.0 * md));
            p.budgets = Eigen::VectorXd::Constant(m, c * std::sqrt(nr));
        } else {
            c = opt.kappa * std::max(0.5, upper_normal_quantile(nr / (8.0 * md)));
            p.budgets = Eigen::VectorXd::Constant(m, c * std::sqrt(nr));
            const Eigen::VectorXd cur = (a * x).cwiseAbs();
            const double lim = opt.kappa * 2.0 * sqrt_n;
            for (Eigen::Index j = 0; j < m; ++j)
                p.budgets[j] = std::min(p.budgets[j], std::max(lim - cur[j], 0.25 * c * std::sqrt(nr)));
        }
        return p;
    };

    IteratedOptions it;
    it.max_time = opt.max_time;
    it.stop_active = opt.straggler_limit ? opt.straggler_limit
                                         : static_cast<std::size_t>(std::ceil(std::log2(std::max<double>(2.0, static_cast<double>(n)))));
    it.min_freeze_fraction = 0.25;
    it.round_retries = 3;

    IteratedResult r = iterate_partial_colorings(a, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), planner, gen, it);

    SpencerResult out;
    out.rounds = std::move(r.rounds);
    out.stragglers = r.active.size();
    out.pre_rounding_inf_norm = inf_norm(a, r.x);
    out.signs = round_signs(r.x);
    const Eigen::VectorXd s = to_vector(out.signs);
    out.straggler_error = inf_norm(a, s - r.x);
    out.inf_norm = inf_norm(a, s);
    out.ratio = out.inf_norm / sqrt_n;
    for (const auto& rec : out.rounds) out.budget_series += rec.max_deviation;
    out.budget_series += out.straggler_error;
    out.within_bound = out.inf_norm <= opt.k_impl * sqrt_n;
    return out;
}

} // namespace detail

// Full +-1 coloring with small ||Ax||_inf by iterated partial coloring.
// Runs `attempts` independent walks and keeps the best.
inline SpencerResult spencer_coloring(const ConstraintSystem& sys, std::uint64_t seed, const SpencerOptions& opt = {})
{
    sys.validate();
    detail::require(sys.spencer_normalized || sys.size() == 0 || sys.rows.cwiseAbs().maxCoeff() <= 1.0,
                    "spencer_coloring needs entries in [-1,1]");
    detail::require(sys.size() <= 2 * sys.dim() || sys.size() == sys.dim(), "spencer_coloring needs m <= 2n");
    detail::require(opt.attempts >= 1, "attempts must be positive");

    SpencerResult best;
    for (std::size_t k = 0; k < opt.attempts; ++k) {
        Rng gen(derive_seed(seed, k));
        SpencerResult r = detail::spencer_attempt(sys.rows, gen, opt);
        r.attempt = k;
        if (k == 0 || r.inf_norm < best.inf_norm) best = std::move(r);
    }
    if (!best.within_bound)
        throw retryable_failure("spencer_coloring exceeded K_impl sqrt(n) in every attempt");
    return best;
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_SPENCER_HPP
