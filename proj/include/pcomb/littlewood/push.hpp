#ifndef PCOMB_LITTLEWOOD_PUSH_HPP
#define PCOMB_LITTLEWOOD_PUSH_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "../core/random.hpp"
#include "../discrepancy/iterated.hpp"
#include "../discrepancy/spencer.hpp"
#include "bad_intervals.hpp"

namespace pcomb {

// (1/|I|) int_I sin(ks) ds = (cos ka - cos kb) / (k |I|).
inline double interval_sine_mean(const Arc& i, double k)
{
    return (std::cos(k * i.a) - std::cos(k * i.b)) / (k * i.length());
}

// Delta(k) = sum_I alpha_I (1/|I|) int_I sin(ks) ds for k in freqs.
inline std::vector<double> compute_push_deltas(const std::vector<Arc>& intervals, const std::vector<int>& alphas,
                                               const std::vector<std::size_t>& freqs)
{
    detail::require(intervals.size() == alphas.size(), "one alpha per interval");
    detail::require(!freqs.empty(), "frequency set must be non-empty");
    std::vector<double> d(freqs.size(), 0.0);
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        detail::require(intervals[i].length() > 0, "intervals must have positive length");
        for (std::size_t j = 0; j < freqs.size(); ++j)
            d[j] += alphas[i] * interval_sine_mean(intervals[i], static_cast<double>(freqs[j]));
    }
    return d;
}

struct PushOptions {
    double c_push = 8.0;         // bias normalization: x0 = clip(Delta / (c_push sqrt(gamma n)))
    double bound_constant = 64.0; // validated: max |Delta| <= bound_constant sqrt(gamma n)
    double piece_scale = 1.0;    // pieces have length <= piece_scale / n
    bool tie_mirrors = true;     // alpha_{-I} = -alpha_I
    std::size_t retries = 4;
};

struct PushPlan {
    std::vector<Arc> intervals;    // one per sign variable (upper half when tied)
    std::vector<int> alphas;
    std::vector<Arc> pieces;       // every piece, mirrored ones included
    std::vector<int> piece_alphas;
    std::vector<std::size_t> freqs;
    std::vector<double> deltas;
    std::vector<double> bias;
    double c_push = 0.0;
    double achieved_constant = 0.0;  // max |Delta| / sqrt(gamma n)
    double clipped_fraction = 0.0;
    double gamma_n = 0.0;
};

namespace detail {

inline Arc mirror(const Arc& i)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    Arc m{two_pi - i.b, two_pi - i.a};
    if (m.a < 0) {
        m.a += two_pi;
        m.b += two_pi;
    }
    return m;
}

inline std::vector<Arc> split_arc(const Arc& i, std::size_t n, double scale)
{
    const auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(i.length() * static_cast<double>(n) / scale - 1e-9)));
    std::vector<Arc> out(k);
    for (std::size_t p = 0; p < k; ++p) {
        out[p].a = i.a + i.length() * static_cast<double>(p) / static_cast<double>(k);
        out[p].b = i.a + i.length() * static_cast<double>(p + 1) / static_cast<double>(k);
    }
    return out;
}

// Upper-half representatives of a mirror-symmetric interval set.
inline std::vector<Arc> upper_half_intervals(const BadIntervalSet& s)
{
    constexpr double pi = std::numbers::pi;
    std::vector<Arc> upper;
    for (const Arc& i : s.intervals) {
        if (i.contains(0.0) || i.contains(pi))
            throw validation_failure("a bad interval contains 0 or pi, where every sine sum vanishes",
                                     {{"interval_start", i.a}, {"interval_end", i.b}});
        if (i.b < pi) upper.push_back(i);
    }
    return upper;
}

} // namespace detail

// Picks alpha_I in {+-1} so that |Delta(k)| stays O(sqrt(gamma n)): a
// discrepancy problem with one column per interval and one row per k in S,
// solved by iterated partial coloring with budgets for the m >> n regime.
inline PushPlan choose_interval_signs(const BadIntervalSet& set, const std::vector<std::size_t>& freqs, double gamma,
                                      std::uint64_t seed, const PushOptions& opt = {})
{
    detail::require(!freqs.empty(), "frequency set must be non-empty");
    detail::require(!set.intervals.empty(), "choose_interval_signs needs at least one interval");
    const std::size_t n = set.n;
    PushPlan plan;
    plan.freqs = freqs;
    plan.c_push = opt.c_push;
    plan.gamma_n = gamma * static_cast<double>(n);
    plan.intervals = opt.tie_mirrors ? detail::upper_half_intervals(set) : set.intervals;
    if (plan.intervals.empty())
        throw validation_failure("no interval in the open upper half circle", {{"count", static_cast<double>(set.count())}});

    const auto cols = static_cast<Eigen::Index>(plan.intervals.size());
    const auto rows = static_cast<Eigen::Index>(freqs.size());
    std::vector<std::vector<Arc>> pieces(plan.intervals.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    for (Eigen::Index g = 0; g < cols; ++g) {
        pieces[static_cast<std::size_t>(g)] = detail::split_arc(plan.intervals[static_cast<std::size_t>(g)], n, opt.piece_scale);
        for (const Arc& p : pieces[static_cast<std::size_t>(g)])
            for (Eigen::Index r = 0; r < rows; ++r) {
                const double v = interval_sine_mean(p, static_cast<double>(freqs[static_cast<std::size_t>(r)]));
                m(r, g) += opt.tie_mirrors ? 2.0 * v : v;
            }
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const Eigen::MatrixXd normalized = scale > 0 ? Eigen::MatrixXd(m / scale) : m;
    const double md = static_cast<double>(rows);

    auto planner = [&](const std::vector<Eigen::Index>& active, const Eigen::VectorXd&) {
        RoundPlan p;
        const double nr = static_cast<double>(active.size());
        p.rows.resize(static_cast<std::size_t>(rows));
        for (Eigen::Index r = 0; r < rows; ++r) p.rows[static_cast<std::size_t>(r)] = r;
        const double c = std::max(0.5, upper_normal_quantile(nr / (8.0 * md)));
        p.budgets = Eigen::VectorXd::Constant(rows, c * std::sqrt(nr));
        return p;
    };

    const double limit = opt.bound_constant * std::sqrt(plan.gamma_n);
    Eigen::VectorXd best_alpha;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t attempt = 0; attempt <= opt.retries; ++attempt) {
        Rng gen(derive_seed(seed, 0x5157u, attempt));
        IteratedOptions it;
        it.stop_active = 1;
        IteratedResult r = iterate_partial_colorings(normalized, Eigen::VectorXd::Zero(cols), planner, gen, it);
        Eigen::VectorXd alpha(cols);
        for (Eigen::Index g = 0; g < cols; ++g) alpha[g] = r.x[g] < 0 ? -1.0 : 1.0;
        const double worst = rows ? (m * alpha).cwiseAbs().maxCoeff() : 0.0;
        if (worst < best) {
            best = worst;
            best_alpha = alpha;
        }
        if (best <= limit) break;
    }
    if (best > limit)
        throw validation_failure("interval signs exceed the push bound", {{"max_abs_delta", best}, {"limit", limit}});

    for (Eigen::Index g = 0; g < cols; ++g) {
        const int a = best_alpha[g] < 0 ? -1 : 1;
        plan.alphas.push_back(a);
        for (const Arc& p : pieces[static_cast<std::size_t>(g)]) {
            plan.pieces.push_back(p);
            plan.piece_alphas.push_back(a);
            if (opt.tie_mirrors) {
                plan.pieces.push_back(detail::mirror(p));
                plan.piece_alphas.push_back(-a);
            }
        }
    }
    plan.deltas = compute_push_deltas(plan.pieces, plan.piece_alphas, freqs);
    const double sg = std::sqrt(plan.gamma_n);
    std::size_t clipped = 0;
    plan.bias.resize(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        plan.achieved_constant = std::max(plan.achieved_constant, std::abs(plan.deltas[j]) / sg);
        const double b = plan.deltas[j] / (opt.c_push * sg);
        if (std::abs(b) >= 1.0) ++clipped;
        plan.bias[j] = std::clamp(b, -1.0, 1.0);
    }
    plan.clipped_fraction = static_cast<double>(clipped) / static_cast<double>(freqs.size());
    return plan;
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_PUSH_HPP
