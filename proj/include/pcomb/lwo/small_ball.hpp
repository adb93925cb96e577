#ifndef PCOMB_LWO_SMALL_BALL_HPP
#define PCOMB_LWO_SMALL_BALL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "../core/error.hpp"
#include "../core/random.hpp"
#include "exact_form.hpp"
#include "lcd.hpp"

namespace pcomb {

enum class Estimator { exact, monte_carlo };

inline constexpr unsigned max_exact_signs = 24;

struct SmallBallEstimate {
    double value = 0.0;
    Estimator mode = Estimator::exact;
    std::uint64_t trials = 0;       // 2^n in exact mode
    double standard_error = 0.0;    // zero in exact mode
    std::uint64_t numerator = 0;    // value = numerator / trials
    unsigned n = 0;
    double b = 0.0;                 // the shift used, or the maximizing one
};

namespace detail {

inline void require_exact_size(std::size_t n)
{
    if (n > max_exact_signs) throw size_limit_error("exact enumeration needs n <= 24");
}

inline SmallBallEstimate make_estimate(std::uint64_t hits, std::uint64_t trials, Estimator mode, unsigned n, double b)
{
    SmallBallEstimate e;
    e.mode = mode;
    e.trials = trials;
    e.numerator = hits;
    e.n = n;
    e.b = b;
    e.value = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    if (mode == Estimator::monte_carlo && trials)
        e.standard_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
    return e;
}

struct HitCounts {
    std::uint64_t total = 0;
    std::uint64_t all = 0;    // every form hit
    std::uint64_t first = 0;  // forms[0] hit
    std::uint64_t rest = 0;   // forms[1..] all hit
};

inline void tally(HitCounts& c, const std::vector<ExactForm>& forms, const std::vector<i128>& sums)
{
    ++c.total;
    const bool a = forms[0].hit(sums[0]);
    bool r = true;
    for (std::size_t j = 1; j < forms.size() && r; ++j) r = forms[j].hit(sums[j]);
    c.first += a;
    c.rest += r;
    c.all += a && r;
}

// All 2^n sign vectors in Gray-code order: one coordinate flips per step.
inline HitCounts exact_counts(const std::vector<ExactForm>& forms, unsigned n)
{
    require_exact_size(n);
    std::vector<i128> sums;
    for (const auto& f : forms) sums.push_back(f.all_minus());
    HitCounts c;
    tally(c, forms, sums);
    std::uint64_t state = 0;
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(k));
        state ^= std::uint64_t{1} << j;
        const bool up = (state >> j) & 1;
        for (std::size_t f = 0; f < forms.size(); ++f) sums[f] += up ? 2 * forms[f].weights[j] : -2 * forms[f].weights[j];
        tally(c, forms, sums);
    }
    return c;
}

inline constexpr std::uint64_t mc_block = 4096;

// Calls visit(sums) once per uniformly random sign vector. Trials are split
// into blocks with their own derived seeds.
template <class Visit>
void sample_signs(const std::vector<ExactForm>& forms, unsigned n, std::uint64_t trials, std::uint64_t seed, Visit&& visit)
{
    std::vector<i128> sums(forms.size());
    for (std::uint64_t start = 0, block = 0; start < trials; start += mc_block, ++block) {
        Rng gen(derive_seed(seed, block));
        const std::uint64_t stop = std::min(trials, start + mc_block);
        for (std::uint64_t t = start; t < stop; ++t) {
            std::fill(sums.begin(), sums.end(), i128{0});
            std::uint64_t bits = 0;
            for (unsigned i = 0; i < n; ++i) {
                if (i % 64 == 0) bits = gen();
                const bool plus = (bits >> (i % 64)) & 1;
                for (std::size_t f = 0; f < forms.size(); ++f) sums[f] += plus ? forms[f].weights[i] : -forms[f].weights[i];
            }
            visit(sums);
        }
    }
}

// Largest number of sorted values inside one open window of width 2 radius
// (radius 0: largest run of equal values). Returns {count, window centre}.
inline std::pair<std::uint64_t, i128> densest_window(std::vector<i128>& s, i128 radius)
{
    std::sort(s.begin(), s.end());
    std::uint64_t best = 0;
    i128 centre = 0;
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < s.size(); ++hi) {
        if (radius == 0) {
            if (s[hi] != s[lo]) lo = hi;
        } else {
            while (s[hi] - s[lo] >= 2 * radius) ++lo;
        }
        const auto count = static_cast<std::uint64_t>(hi - lo + 1);
        if (count > best) {
            best = count;
            centre = s[lo] + s[hi];  // twice the centre, halved by the caller
        }
    }
    return {best, centre};
}

} // namespace detail

// rho_eps(v) at shift b, or maximized over b when b is empty:
// P(|<X, v> - b| < eps), with eps = 0 meaning exact equality.
inline SmallBallEstimate rho_small_ball(const WeightVector& v, double eps, std::optional<double> b,
                                        Estimator mode = Estimator::exact, std::uint64_t trials = 0,
                                        std::uint64_t seed = 0)
{
    v.validate();
    const auto n = static_cast<unsigned>(v.size());
    const ExactForm form = make_exact_form(v, b.value_or(0.0), eps);
    const std::vector<ExactForm> forms{form};
    if (mode == Estimator::exact) {
        detail::require_exact_size(n);
        if (b) return detail::make_estimate(detail::exact_counts(forms, n).first, std::uint64_t{1} << n, mode, n, *b);
        std::vector<i128> sums;
        sums.reserve(std::size_t{1} << n);
        i128 s = form.all_minus();
        sums.push_back(s);
        std::uint64_t state = 0;
        for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
            const unsigned j = static_cast<unsigned>(std::countr_zero(k));
            state ^= std::uint64_t{1} << j;
            s += ((state >> j) & 1) ? 2 * form.weights[j] : -2 * form.weights[j];
            sums.push_back(s);
        }
        const auto [count, twice] = detail::densest_window(sums, form.radius);
        return detail::make_estimate(count, std::uint64_t{1} << n, mode, n, to_double(twice) * form.scale / 2);
    }
    detail::require(trials > 0, "monte carlo mode needs trials > 0");
    if (b) {
        std::uint64_t hits = 0;
        detail::sample_signs(forms, n, trials, seed, [&](const std::vector<i128>& s) { hits += form.hit(s[0]); });
        return detail::make_estimate(hits, trials, mode, n, *b);
    }
    // Maximizing over b on the sample; biased upward for small trial counts.
    std::vector<i128> sums;
    sums.reserve(trials);
    detail::sample_signs(forms, n, trials, seed, [&](const std::vector<i128>& s) { sums.push_back(s[0]); });
    const auto [count, twice] = detail::densest_window(sums, form.radius);
    return detail::make_estimate(count, trials, mode, n, to_double(twice) * form.scale / 2);
}

struct ErdosCheck {
    SmallBallEstimate rho0;         // maximized over b
    std::uint64_t bound_numerator;  // binom(n, n / 2)
    double bound = 0.0;             // bound_numerator / 2^n
    bool holds = false;
};

inline std::uint64_t central_binomial(unsigned n)
{
    std::uint64_t c = 1;
    for (unsigned i = 1; i <= n / 2; ++i) c = c * (n - n / 2 + i) / i;
    return c;
}

// rho_0(v) <= rho_0((1, ..., 1)) for v with no zero coordinate, both exact.
inline ErdosCheck erdos_bound_check(const WeightVector& v)
{
    detail::require_exact_size(v.size());
    for (double x : v.entries) detail::require(x != 0.0, "every coordinate must be nonzero");
    ErdosCheck c;
    c.rho0 = rho_small_ball(v, 0.0, std::nullopt);
    const auto n = static_cast<unsigned>(v.size());
    c.bound_numerator = central_binomial(n);
    c.bound = static_cast<double>(c.bound_numerator) / std::ldexp(1.0, static_cast<int>(n));
    c.holds = c.rho0.numerator <= c.bound_numerator;
    return c;
}

struct RvAudit {
    unsigned n = 0;
    double alpha = 0.0;
    double eps = 0.0;
    SmallBallEstimate probability;  // P(|<X, v>| < eps)
    double ratio = 0.0;             // probability / eps
    LcdResult lcd;
};

struct RvAuditOptions {
    double phi_max = 1000.0;
    double grid_step = 0.01;
};

// Small-ball probability at b = 0 next to the LCD, for plots across a family
// of v. Exact for n <= 24, Monte Carlo above.
inline RvAudit rv_bound_audit(const WeightVector& v, double alpha, double eps, std::uint64_t trials, std::uint64_t seed,
                              const RvAuditOptions& opt = {})
{
    detail::require(v.normalized, "rv audit needs a unit vector");
    RvAudit a;
    a.n = static_cast<unsigned>(v.size());
    a.alpha = alpha;
    a.eps = eps;
    a.probability = v.size() <= max_exact_signs ? rho_small_ball(v, eps, 0.0)
                                                : rho_small_ball(v, eps, 0.0, Estimator::monte_carlo, trials, seed);
    a.ratio = eps > 0 ? a.probability.value / eps : std::numeric_limits<double>::infinity();
    a.lcd = lcd(v, alpha, opt.phi_max, opt.grid_step);
    return a;
}

struct JointSmallBall {
    unsigned k = 0;
    Estimator mode = Estimator::exact;
    std::uint64_t trials = 0;
    std::uint64_t joint_numerator = 0;
    std::uint64_t marginal_numerator = 0;
    std::uint64_t w_numerator = 0;
    double joint = 0.0;          // P(|<X,v>| < eps and |<X,w_i>| < beta for all i)
    double marginal = 0.0;       // P(|<X,v>| < eps)
    double w_only = 0.0;         // P(|<X,w_i>| < beta for all i)
    double product = 0.0;        // marginal w_only
    double product_bound = 0.0;  // marginal e^{-k}
    double ratio = 0.0;          // joint / product_bound
    double standard_error = 0.0; // of joint, Monte Carlo only
};

inline void require_orthonormal(const std::vector<WeightVector>& W, std::size_t n)
{
    for (std::size_t i = 0; i < W.size(); ++i) {
        detail::require(W[i].size() == n, "w_i has the wrong length");
        for (std::size_t j = i; j < W.size(); ++j) {
            double dot = 0.0;
            for (std::size_t t = 0; t < n; ++t) dot += W[i].entries[t] * W[j].entries[t];
            detail::require(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-9, "W is not orthonormal");
        }
    }
}

inline JointSmallBall joint_small_ball(const WeightVector& v, const std::vector<WeightVector>& W, double eps, double beta,
                                       Estimator mode = Estimator::exact, std::uint64_t trials = 0, std::uint64_t seed = 0)
{
    v.validate();
    const auto n = static_cast<unsigned>(v.size());
    require_orthonormal(W, n);
    detail::require(beta >= 0.0, "beta must be non-negative");
    std::vector<ExactForm> forms{make_exact_form(v, 0.0, eps)};
    for (const auto& w : W) forms.push_back(make_exact_form(w, 0.0, beta));

    detail::HitCounts c;
    if (mode == Estimator::exact) {
        c = detail::exact_counts(forms, n);
    } else {
        detail::require(trials > 0, "monte carlo mode needs trials > 0");
        detail::sample_signs(forms, n, trials, seed, [&](const std::vector<i128>& s) { detail::tally(c, forms, s); });
    }
    JointSmallBall r;
    r.k = static_cast<unsigned>(W.size());
    r.mode = mode;
    r.trials = c.total;
    r.joint_numerator = c.all;
    r.marginal_numerator = c.first;
    r.w_numerator = c.rest;
    const double t = static_cast<double>(c.total);
    r.joint = static_cast<double>(c.all) / t;
    r.marginal = static_cast<double>(c.first) / t;
    r.w_only = static_cast<double>(c.rest) / t;
    r.product = r.marginal * r.w_only;
    r.product_bound = r.marginal * std::exp(-static_cast<double>(r.k));
    r.ratio = r.product_bound > 0 ? r.joint / r.product_bound : 0.0;
    if (mode == Estimator::monte_carlo) r.standard_error = std::sqrt(r.joint * (1.0 - r.joint) / t);
    return r;
}

// A random unit v in R^n and k random orthonormal vectors orthogonal to it;
// the first j of the list give the family member with k = j.
struct JointFixture {
    WeightVector v;
    std::vector<WeightVector> W;
};

inline JointFixture joint_fixture(unsigned n, unsigned k, std::uint64_t seed)
{
    detail::require(k + 1 <= n, "need k + 1 <= n");
    Rng gen(seed);
    Eigen::MatrixXd g(n, k + 1);
    for (Eigen::Index j = 0; j < g.cols(); ++j)
        for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = standard_normal(gen);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() * Eigen::MatrixXd::Identity(n, k + 1);
    auto column = [&](Eigen::Index j) {
        std::vector<double> c(n);
        for (unsigned i = 0; i < n; ++i) c[i] = q(i, j);
        return WeightVector::unit(std::move(c));
    };
    JointFixture f{column(0), {}};
    for (unsigned j = 1; j <= k; ++j) f.W.push_back(column(j));
    return f;
}

} // namespace pcomb

#endif // PCOMB_LWO_SMALL_BALL_HPP
