#ifndef PCOMB_LITTLEWOOD_SINE_PART_HPP
#define PCOMB_LITTLEWOOD_SINE_PART_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "../core/random.hpp"
#include "../discrepancy/iterated.hpp"
#include "bad_intervals.hpp"
#include "evaluate.hpp"
#include "push.hpp"

namespace pcomb {

struct SinePartOptions {
    double floor = 0.03;          // target s >= floor sqrt(n) (times alpha) on intervals
    double cap = 9.0;             // target |s| <= cap sqrt(n) on the global grid
    double c2 = 9.5;              // validated upper bound, units of sqrt(n)
    double delta = 0.0;           // validated lower bound on intervals; 0 uses the set's delta
    double point_density = 3.0;   // constraint points per 1/n of interval length
    std::size_t global_grid = 4;  // global rows at multiples of pi / (global_grid n)
    double risk_sigmas = 4.0;     // constrain rows whose margin is below this many sigmas
    double budget_fraction = 0.5; // budget = fraction * margin
    double row_cap = 0.75;        // at most row_cap * n_r rows per round, most at risk first
    std::size_t exhaustive_limit = 16;
    std::size_t repair_flips = 256; // greedy single-sign flips after rounding
    double repair_margin = 0.02;    // repair targets margin >= this * sqrt(n)
    std::size_t validation_multiplier = 128;
    double max_time = 4.0;
};

struct SinePart {
    std::vector<std::size_t> freqs;
    std::vector<int> signs;  // eps_k for k in freqs
    double min_on_intervals = 0.0;  // min over validation points of alpha s(x) / sqrt(n)
    double max_abs = 0.0;           // max |s| / sqrt(n) on the validation grid
    std::size_t rounds = 0;
    std::size_t stragglers = 0;
    std::size_t constraint_points = 0;
    bool upper_ok = false;
    bool lower_ok = false;
    std::vector<RoundRecord> round_log;
};

namespace detail {

inline double sine_value(const std::vector<std::size_t>& freqs, const std::vector<int>& signs, std::vector<double>& buf, double x)
{
    fill_sines(x, freqs.back(), buf);
    double s = 0.0;
    for (std::size_t j = 0; j < freqs.size(); ++j) s += signs[j] * buf[freqs[j]];
    return s;
}

} // namespace detail

// Re-checks a sine assignment on a fresh grid of multiplier * n points:
// |s| <= c2 sqrt(n) everywhere and alpha_I s >= delta sqrt(n) on every
// interval (upper-half representatives; s is odd so mirrors follow).
inline void validate_sine_part(SinePart& sp, const PushPlan& plan, std::size_t n, double c2, double delta,
                               std::size_t multiplier)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double rn = std::sqrt(static_cast<double>(n));
    const std::size_t N = multiplier * n;
    std::vector<double> buf;
    sp.max_abs = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double v = detail::sine_value(sp.freqs, sp.signs, buf, two_pi * static_cast<double>(j) / static_cast<double>(N));
        sp.max_abs = std::max(sp.max_abs, std::abs(v) / rn);
    }
    sp.min_on_intervals = std::numeric_limits<double>::infinity();
    const double h = two_pi / static_cast<double>(N);
    for (std::size_t g = 0; g < plan.intervals.size(); ++g) {
        const Arc& I = plan.intervals[g];
        std::vector<double> xs{I.a, I.b};
        for (double x = std::ceil(I.a / h) * h; x < I.b; x += h) xs.push_back(x);
        for (double x : xs) {
            const double v = plan.alphas[g] * detail::sine_value(sp.freqs, sp.signs, buf, x) / rn;
            sp.min_on_intervals = std::min(sp.min_on_intervals, v);
        }
    }
    if (plan.intervals.empty()) sp.min_on_intervals = 0.0;
    sp.upper_ok = sp.max_abs <= c2;
    sp.lower_ok = plan.intervals.empty() || sp.min_on_intervals >= delta;
}

// Chooses eps_k, k in S, starting the walk at the plan's bias. Rows are point
// evaluations alpha_I sin(k x) on each interval (kept above floor sqrt(n))
// and sin(k x) on a global grid over (0, pi) (kept below cap sqrt(n)); each
// round constrains only rows whose margin is within risk_sigmas standard
// deviations, with budget a fixed fraction of the margin. The last few free
// signs are completed exhaustively.
inline SinePart build_sine_part(const PushPlan& plan, std::size_t n, std::uint64_t seed, const SinePartOptions& opt = {})
{
    const auto& freqs = plan.freqs;
    detail::require(!freqs.empty(), "frequency set must be non-empty");
    detail::require(plan.bias.size() == freqs.size(), "plan bias must cover the frequency set");
    constexpr double pi = std::numbers::pi;
    const double rn = std::sqrt(static_cast<double>(n));
    const std::size_t kmax = freqs.back();
    const auto cols = static_cast<Eigen::Index>(freqs.size());

    std::vector<double> xs, sg;
    for (std::size_t g = 0; g < plan.intervals.size(); ++g) {
        const Arc& I = plan.intervals[g];
        const auto k = static_cast<std::size_t>(std::ceil(I.length() * opt.point_density * static_cast<double>(n)));
        for (std::size_t p = 0; p <= k; ++p) {
            xs.push_back(I.a + I.length() * static_cast<double>(p) / static_cast<double>(std::max<std::size_t>(k, 1)));
            sg.push_back(plan.alphas[g]);
        }
    }
    const std::size_t mp = xs.size();
    const std::size_t G = opt.global_grid * n;
    for (std::size_t j = 1; j < G; ++j) {
        xs.push_back(pi * static_cast<double>(j) / static_cast<double>(G));
        sg.push_back(1.0);
    }
    const auto rows = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd a(rows, cols);
    std::vector<double> buf;
    for (Eigen::Index r = 0; r < rows; ++r) {
        fill_sines(xs[static_cast<std::size_t>(r)], kmax, buf);
        for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = sg[static_cast<std::size_t>(r)] * buf[freqs[static_cast<std::size_t>(c)]];
    }
    const double floor = opt.floor * rn, cap = opt.cap * rn;

    auto margins = [&](const Eigen::VectorXd& cur) {
        Eigen::VectorXd mg(rows);
        for (Eigen::Index r = 0; r < rows; ++r)
            mg[r] = static_cast<std::size_t>(r) < mp ? cur[r] - floor : cap - std::abs(cur[r]);
        return mg;
    };

    auto planner = [&](const std::vector<Eigen::Index>& active, const Eigen::VectorXd& x) {
        const Eigen::VectorXd cur = a * x;
        const Eigen::VectorXd mg = margins(cur);
        Eigen::VectorXd w(cols);
        w.setZero();
        for (Eigen::Index i : active) w[i] = 1.0 - x[i] * x[i];
        std::vector<std::pair<double, Eigen::Index>> risky;  // (margin / sigma, row)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double sigma = std::sqrt(a.row(r).cwiseAbs2().dot(w));
            if (mg[r] < opt.risk_sigmas * sigma) risky.emplace_back(sigma > 0 ? mg[r] / sigma : -1.0, r);
        }
        const auto cap = static_cast<std::size_t>(opt.row_cap * static_cast<double>(active.size()));
        if (risky.size() > cap) {
            std::nth_element(risky.begin(), risky.begin() + static_cast<std::ptrdiff_t>(cap), risky.end());
            risky.resize(cap);
        }
        std::sort(risky.begin(), risky.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
        RoundPlan p;
        p.budgets.resize(static_cast<Eigen::Index>(risky.size()));
        for (std::size_t i = 0; i < risky.size(); ++i) {
            p.rows.push_back(risky[i].second);
            p.budgets[static_cast<Eigen::Index>(i)] = std::max(opt.budget_fraction * mg[risky[i].second], 1e-6);
        }
        return p;
    };

    Eigen::VectorXd x0(cols);
    for (Eigen::Index c = 0; c < cols; ++c) x0[c] = plan.bias[static_cast<std::size_t>(c)];

    IteratedOptions it;
    it.max_time = opt.max_time;
    it.stop_active = static_cast<std::size_t>(std::log2(static_cast<double>(freqs.size())));
    it.step_floor = 0.04;
    it.step_floor_from = 400;
    Rng gen(derive_seed(seed, 0x51e5u));
    IteratedResult r = iterate_partial_colorings(a, x0, planner, gen, it);

    Eigen::VectorXd x = r.x;
    for (Eigen::Index c = 0; c < cols; ++c) x[c] = x[c] < 0 ? -1.0 : 1.0;
    if (!r.active.empty() && r.active.size() <= opt.exhaustive_limit) {
        // Best completion of the remaining coordinates by worst-row margin,
        // enumerated in Gray-code order.
        Eigen::VectorXd base = r.x;
        for (Eigen::Index i : r.active) base[i] = -1.0;
        Eigen::VectorXd cur = a * base;
        const std::size_t k = r.active.size();
        double best = margins(cur).minCoeff();
        std::uint64_t best_mask = 0, mask = 0;
        for (std::uint64_t step = 1; step < (std::uint64_t{1} << k); ++step) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(step));
            const Eigen::Index col = r.active[bit];
            const double dir = (mask >> bit & 1u) ? -2.0 : 2.0;
            cur.noalias() += dir * a.col(col);
            mask ^= std::uint64_t{1} << bit;
            const double score = margins(cur).minCoeff();
            if (score > best) {
                best = score;
                best_mask = mask;
            }
        }
        for (std::size_t b = 0; b < k; ++b) x[r.active[b]] = (best_mask >> b & 1u) ? 1.0 : -1.0;
    }

    // Greedy repair: flip the single sign that most reduces the squared
    // shortfall of all rows below a small safety margin.
    {
        const double safety = opt.repair_margin * rn;
        auto shortfall = [&](const Eigen::VectorXd& cur) {
            const Eigen::VectorXd mg = margins(cur);
            double s = 0.0;
            for (Eigen::Index r = 0; r < rows; ++r)
                if (mg[r] < safety) s += (safety - mg[r]) * (safety - mg[r]);
            return s;
        };
        Eigen::VectorXd cur = a * x;
        double pen = shortfall(cur);
        for (std::size_t f = 0; f < opt.repair_flips && pen > 0.0; ++f) {
            Eigen::Index best_col = -1;
            double best = pen;
            for (Eigen::Index c = 0; c < cols; ++c) {
                const double score = shortfall(cur - 2.0 * x[c] * a.col(c));
                if (score < best) {
                    best = score;
                    best_col = c;
                }
            }
            if (best_col < 0) break;
            cur -= 2.0 * x[best_col] * a.col(best_col);
            x[best_col] = -x[best_col];
            pen = best;
        }
    }

    SinePart sp;
    sp.freqs = freqs;
    sp.signs.resize(freqs.size());
    for (Eigen::Index c = 0; c < cols; ++c) sp.signs[static_cast<std::size_t>(c)] = x[c] < 0 ? -1 : 1;
    sp.rounds = r.rounds.size();
    sp.round_log = r.rounds;
    sp.stragglers = r.active.size();
    sp.constraint_points = mp;
    return sp;
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_SINE_PART_HPP
