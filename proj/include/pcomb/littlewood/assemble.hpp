#ifndef PCOMB_LITTLEWOOD_ASSEMBLE_HPP
#define PCOMB_LITTLEWOOD_ASSEMBLE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "bad_intervals.hpp"
#include "cosine_part.hpp"
#include "poly.hpp"
#include "push.hpp"
#include "sine_part.hpp"

namespace pcomb {

struct FlatLittlewoodOptions {
    double min_target = 0.02;  // min |P| >= min_target sqrt(4n)
    double max_target = 10.0;  // max |P| <= max_target sqrt(4n)
    std::size_t detection_grid = 8;
    std::size_t flatness_grid = 64;
    std::size_t retries = 10;
    BadIntervalConfig intervals{};
    PushOptions push{};
    SinePartOptions sine{};
};

struct FlatLittlewoodResult {
    LittlewoodPoly poly;
    FlatnessReport flatness;
    BadIntervalSet intervals;
    PushPlan plan;
    SinePart sine;
    double delta_used = 0.0;
    std::size_t attempts = 0;
    double min_normalized = 0.0;  // min |P| / sqrt(4n)
    double max_normalized = 0.0;
};

// Outside the bad set |f| >= 2 |c + 1/2| >= 2 delta sqrt(n), so the detection
// threshold is raised to 1.25 min_target when the requested delta is below it.
inline double effective_delta(double delta, double min_target) { return std::max(delta, 1.25 * min_target); }

inline LittlewoodPoly assemble_coefficients(std::size_t n, double gamma, const CosinePart& cp, const SinePart& sp)
{
    std::vector<int> eps(4 * n + 1, 0);
    auto at = [&](long k) -> int& { return eps[static_cast<std::size_t>(k + static_cast<long>(2 * n))]; };
    at(0) = 1;
    const auto cf = cp.frequencies();
    const auto cs = cp.signs();
    for (std::size_t j = 0; j < cf.size(); ++j) {
        at(static_cast<long>(cf[j])) = cs[j];
        at(-static_cast<long>(cf[j])) = cs[j];
    }
    for (std::size_t j = 0; j < sp.freqs.size(); ++j) {
        at(static_cast<long>(sp.freqs[j])) = sp.signs[j];
        at(-static_cast<long>(sp.freqs[j])) = -sp.signs[j];
    }
    return LittlewoodPoly(n, gamma, std::move(eps), cf);
}

inline std::vector<std::size_t> sine_frequencies(std::size_t n, const CosinePart& cp)
{
    std::vector<std::size_t> s;
    for (std::size_t k = 1; k <= 2 * n; ++k)
        if (k < cp.T || k >= 3 * cp.T) s.push_back(k);
    return s;
}

// Cosine part -> bad intervals -> interval signs -> sine part -> assembly.
// Randomized stages are rerun with derived seeds until the flatness targets
// hold or the retry budget is spent.
inline FlatLittlewoodResult assemble_flat_littlewood(std::size_t n, double gamma, double delta, std::uint64_t seed,
                                                     FlatLittlewoodOptions opt = {})
{
    detail::require(delta > 0.0, "delta must be positive");
    detail::require(opt.retries >= 1, "retry budget must be positive");
    const CosinePart cp = build_cosine_part(n, gamma);
    opt.intervals.gamma = gamma;

    FlatLittlewoodResult res;
    res.delta_used = effective_delta(delta, opt.min_target);
    auto shifted = [&cp](double x) { return cp(x) + 0.5; };
    try {
        res.intervals = detect_bad_intervals(shifted, n, res.delta_used, opt.detection_grid, opt.intervals);
    } catch (const validation_failure& e) {
        throw pipeline_failure("bad_intervals", e.what(), e.stats());
    }
    const auto S = sine_frequencies(n, cp);
    const double root = std::sqrt(4.0 * static_cast<double>(n));

    std::string last_stage = "sine_part";
    std::map<std::string, double> last_stats;
    for (std::size_t attempt = 0; attempt < opt.retries; ++attempt) {
        res.attempts = attempt + 1;
        const std::uint64_t s = derive_seed(seed, attempt);
        try {
            if (res.intervals.intervals.empty()) {
                res.plan = PushPlan{};
                res.plan.freqs = S;
                res.plan.bias.assign(S.size(), 0.0);
                res.plan.c_push = opt.push.c_push;
                res.plan.gamma_n = gamma * static_cast<double>(n);
            } else {
                res.plan = choose_interval_signs(res.intervals, S, gamma, s, opt.push);
            }
        } catch (const validation_failure& e) {
            last_stage = "interval_signs";
            last_stats = e.stats();
            continue;
        }
        res.sine = build_sine_part(res.plan, n, s, opt.sine);
        validate_sine_part(res.sine, res.plan, n, opt.sine.c2,
                           opt.sine.delta > 0 ? opt.sine.delta : res.delta_used, opt.sine.validation_multiplier);
        if (!res.sine.upper_ok || !res.sine.lower_ok) {
            last_stage = "sine_part";
            last_stats = {{"min_on_intervals", res.sine.min_on_intervals}, {"max_abs", res.sine.max_abs}};
            continue;
        }
        res.poly = assemble_coefficients(n, gamma, cp, res.sine);
        res.flatness = flatness_report(res.poly, opt.flatness_grid);
        res.min_normalized = res.flatness.min_abs / root;
        res.max_normalized = res.flatness.max_abs / root;
        if (res.min_normalized >= opt.min_target && res.max_normalized <= opt.max_target) return res;
        last_stage = "flatness";
        last_stats = {{"min_normalized", res.min_normalized}, {"max_normalized", res.max_normalized}};
    }
    last_stats["attempts"] = static_cast<double>(opt.retries);
    throw pipeline_failure(last_stage, "flat Littlewood pipeline did not meet its targets", last_stats);
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_ASSEMBLE_HPP
