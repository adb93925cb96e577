#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "pcomb/littlewood.hpp"

using namespace pcomb;

namespace {

constexpr double pi = std::numbers::pi;

// Closed form of the Rudin-Shapiro sequence: (-1)^(number of adjacent 11
// pairs in the binary expansion of k).
int rs_oracle(std::size_t k) { return std::popcount(k & (k >> 1)) % 2 ? -1 : 1; }

std::complex<double> direct_sum(const std::vector<int>& a, double x)
{
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        re += a[k] * std::cos(static_cast<double>(k) * x);
        im += a[k] * std::sin(static_cast<double>(k) * x);
    }
    return {re, im};
}

PushPlan single_interval_plan(std::size_t n, Arc I, int alpha)
{
    PushPlan p;
    p.intervals = {I};
    p.alphas = {alpha};
    p.pieces = {I, detail::mirror(I)};
    p.piece_alphas = {alpha, -alpha};
    for (std::size_t k = 1; k <= 2 * n; ++k) p.freqs.push_back(k);
    p.deltas = compute_push_deltas(p.pieces, p.piece_alphas, p.freqs);
    p.bias.assign(p.freqs.size(), 0.0);
    p.c_push = 8.0;
    p.gamma_n = static_cast<double>(n) / 32.0;
    return p;
}

} // namespace

TEST(RudinShapiro, SmallLevels)
{
    auto r0 = rudin_shapiro(0);
    EXPECT_EQ(r0.p, std::vector<int>{1});
    EXPECT_EQ(r0.q, std::vector<int>{1});
    auto r1 = rudin_shapiro(1);
    EXPECT_EQ(r1.p, (std::vector<int>{1, 1}));
    EXPECT_EQ(r1.q, (std::vector<int>{1, -1}));
    auto r2 = rudin_shapiro(2);
    EXPECT_EQ(r2.p, (std::vector<int>{1, 1, 1, -1}));
    const double p1 = std::abs(evaluate_at_angle(r2.p, 0.0)), q1 = std::abs(evaluate_at_angle(r2.q, 0.0));
    EXPECT_NEAR(p1 * p1 + q1 * q1, 8.0, 1e-12);
}

TEST(RudinShapiro, MatchesBinaryPairFormula)
{
    for (unsigned t = 1; t <= 12; ++t) {
        auto r = rudin_shapiro(t);
        const std::size_t half = std::size_t{1} << (t - 1);
        for (std::size_t k = 0; k < r.p.size(); ++k) {
            ASSERT_EQ(r.p[k], rs_oracle(k)) << "t=" << t << " k=" << k;
            ASSERT_EQ(r.q[k], k < half ? rs_oracle(k) : -rs_oracle(k)) << "t=" << t << " k=" << k;
        }
    }
}

TEST(RudinShapiro, SquareSumIdentity)
{
    for (unsigned t = 0; t <= 10; ++t) {
        auto r = rudin_shapiro(t);
        const auto P = evaluate_on_circle(r.p, 4096), Q = evaluate_on_circle(r.q, 4096);
        const double target = std::ldexp(1.0, static_cast<int>(t) + 1);
        for (std::size_t j = 0; j < 4096; ++j)
            ASSERT_NEAR((std::norm(P[j]) + std::norm(Q[j])) / target, 1.0, 1e-9);
    }
}

TEST(RudinShapiro, LevelLimit) { EXPECT_THROW(rudin_shapiro(25), size_limit_error); }

TEST(Evaluate, Examples)
{
    EXPECT_NEAR(std::abs(evaluate_at_angle(std::vector<int>{1, 1}, 0.0) - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::real(evaluate_at_angle(rudin_shapiro(2).p, 0.0)), 2.0, 1e-15);
}

TEST(Evaluate, HornerAgreesWithDirectSum)
{
    Rng gen(11);
    std::vector<int> a(301);
    for (int& c : a) c = random_sign(gen);
    const std::size_t N = 1024;
    const auto v = evaluate_on_circle(a, N);
    for (std::size_t j = 0; j < N; j += 7)
        EXPECT_LT(std::abs(v[j] - direct_sum(a, 2 * pi * static_cast<double>(j) / N)), 1e-9);
}

TEST(Evaluate, ParsevalOnFullGrid)
{
    Rng gen(5);
    for (std::size_t len : {1u, 2u, 17u, 200u}) {
        std::vector<int> a(len);
        for (int& c : a) c = random_sign(gen);
        const auto r = flatness_report(a, 8);
        EXPECT_NEAR(r.mean_square / static_cast<double>(len), 1.0, 1e-6) << len;
    }
}

TEST(Evaluate, SineAndCosineRecurrences)
{
    std::vector<double> s, c;
    fill_sines(0.37, 500, s);
    fill_cosines(0.37, 500, c);
    for (std::size_t k = 0; k <= 500; ++k) {
        EXPECT_NEAR(s[k], std::sin(0.37 * static_cast<double>(k)), 1e-11);
        EXPECT_NEAR(c[k], std::cos(0.37 * static_cast<double>(k)), 1e-11);
    }
}

TEST(Flatness, GeometricSums)
{
    auto r = flatness_report(std::vector<int>{1, 1, 1, 1}, 64);
    EXPECT_NEAR(r.min_abs, 0.0, 1e-12);
    EXPECT_NEAR(r.max_abs, 4.0, 1e-12);
    EXPECT_NEAR(r.argmax, 0.0, 1e-12);
    // Zeros at i, -1, -i; the first one found on the grid is i.
    EXPECT_NEAR(r.argmin, pi / 2, 1e-12);
    auto d1 = flatness_report(std::vector<int>{1, 1}, 64);
    EXPECT_NEAR(d1.min_abs, 0.0, 1e-12);
    EXPECT_NEAR(d1.max_abs, 2.0, 1e-12);
    EXPECT_GT(d1.ratio, 1e12);
}

TEST(Flatness, RudinShapiroStaysWithinIdentityBound)
{
    for (unsigned t = 2; t <= 10; ++t) {
        auto r = flatness_report(rudin_shapiro(t).p, 16);
        EXPECT_LE(r.max_abs, std::sqrt(2.0) * std::sqrt(std::ldexp(1.0, static_cast<int>(t))) * (1 + 1e-12));
    }
}

TEST(LittlewoodPoly, RejectsBrokenSymmetry)
{
    std::vector<int> e(9, 1);  // n = 2
    EXPECT_NO_THROW(LittlewoodPoly(2, 0.5, e, {1, 2, 3, 4}));
    EXPECT_THROW(LittlewoodPoly(2, 0.5, e, {1}), invalid_argument);  // sine freq with eps_{-k} = eps_k
    e[0] = 0;
    EXPECT_THROW(LittlewoodPoly(2, 0.5, e, {1, 2, 3, 4}), invalid_argument);
    EXPECT_THROW(LittlewoodPoly(2, 0.5, std::vector<int>(7, 1), {}), invalid_argument);
}

TEST(CosinePart, DecisionRule)
{
    auto c = build_cosine_part(256, 1.0 / 16);
    EXPECT_EQ(c.t, 4u);
    EXPECT_EQ(c.T, 16u);
    auto f = c.frequencies();
    ASSERT_EQ(f.size(), 32u);
    EXPECT_EQ(f.front(), 16u);
    EXPECT_EQ(f.back(), 47u);
    EXPECT_THROW(build_cosine_part(256, 0.2), invalid_argument);
    EXPECT_THROW(build_cosine_part(100, 1.0 / 32), invalid_argument);
}

TEST(CosinePart, ValueAtZeroAndCosineSum)
{
    CosinePart c{16, 0.25, 2, 4, rudin_shapiro(2)};
    EXPECT_NEAR(c(0.0), 4.0, 1e-12);
    auto cp = build_cosine_part(512, 1.0 / 32);
    const auto f = cp.frequencies();
    const auto s = cp.signs();
    for (double x : {0.1, 1.3, 2.9, 4.4}) {
        double ref = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) ref += s[j] * std::cos(static_cast<double>(f[j]) * x);
        EXPECT_NEAR(cp(x), ref, 1e-10);
    }
}

TEST(CosinePart, SupBoundOnGrid)
{
    CosinePart c{8192, 1.0 / 32, 8, 256, rudin_shapiro(8)};
    double sup = 0.0;
    for (std::size_t j = 0; j < 4096; ++j) sup = std::max(sup, std::abs(c(2 * pi * static_cast<double>(j) / 4096)));
    EXPECT_LE(sup, 32.0 + 1e-9);
    EXPECT_DOUBLE_EQ(c.sup_bound(), 32.0);
}

TEST(BadIntervals, CosineHasTwoArcs)
{
    const std::size_t n = 64;
    auto s = scan_bad_intervals([](double x) { return 8.0 * std::cos(x); }, n, 0.5, 64);
    ASSERT_EQ(s.count(), 2u);
    const double h = 2 * pi / static_cast<double>(s.grid_points);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(s.intervals[i].length(), pi / 3, 2 * h + 1e-12);
        EXPECT_TRUE(s.intervals[i].contains(i == 0 ? pi / 2 : 3 * pi / 2));
    }
}

TEST(BadIntervals, ConstantAndZero)
{
    auto empty = detect_bad_intervals([](double) { return 16.0; }, 64, 0.5, 8);
    EXPECT_EQ(empty.count(), 0u);
    EXPECT_TRUE(empty.valid());
    EXPECT_THROW(detect_bad_intervals([](double) { return 0.0; }, 64, 0.5, 8), validation_failure);
    auto whole = scan_bad_intervals([](double) { return 0.0; }, 64, 0.5, 8);
    EXPECT_TRUE(whole.whole_circle);
}

TEST(BadIntervals, WrapAroundMerges)
{
    // |sin x| < 4 delta near 0 and pi; the arc at 0 wraps.
    auto s = scan_bad_intervals([](double x) { return 8.0 * std::sin(x); }, 64, 0.25, 64);
    ASSERT_EQ(s.count(), 2u);
    EXPECT_TRUE(s.intervals[0].contains(pi));
    EXPECT_TRUE(s.intervals[1].contains(0.0));
    EXPECT_GT(s.intervals[1].b, 2 * pi);
}

TEST(Push, HalfCircleClosedForm)
{
    const Arc half{0.0, pi};
    for (std::size_t k = 1; k <= 9; ++k) {
        const double want = k % 2 ? 2.0 / (static_cast<double>(k) * pi) : 0.0;
        EXPECT_NEAR(interval_sine_mean(half, static_cast<double>(k)), want, 1e-14);
    }
}

TEST(Push, SymmetricArcAndCancellation)
{
    const std::vector<std::size_t> freqs{1, 2, 5, 17};
    for (double v : compute_push_deltas({Arc{2 * pi - 0.3, 2 * pi + 0.3}}, {1}, freqs)) EXPECT_NEAR(v, 0.0, 1e-14);
    for (double v : compute_push_deltas({Arc{0.4, 0.9}, Arc{0.4, 0.9}}, {1, -1}, freqs)) EXPECT_NEAR(v, 0.0, 1e-15);
    // Integrals add over a split: |I| mean(I) = sum |piece| mean(piece).
    const auto whole = compute_push_deltas({Arc{0.4, 0.9}}, {1}, freqs);
    const auto left = compute_push_deltas({Arc{0.4, 0.6}}, {1}, freqs);
    const auto right = compute_push_deltas({Arc{0.6, 0.9}}, {1}, freqs);
    for (std::size_t j = 0; j < freqs.size(); ++j) EXPECT_NEAR(0.5 * whole[j], 0.2 * left[j] + 0.3 * right[j], 1e-14);
}

TEST(Push, SingleIntervalWithinBound)
{
    const std::size_t n = 256;
    BadIntervalSet s;
    s.n = n;
    s.intervals = {Arc{1.0, 1.0 + 4.0 / n}, Arc{2 * pi - 1.0 - 4.0 / n, 2 * pi - 1.0}};
    std::vector<std::size_t> freqs;
    for (std::size_t k = 1; k <= 2 * n; ++k) freqs.push_back(k);
    auto plan = choose_interval_signs(s, freqs, 1.0 / 32, 3);
    ASSERT_EQ(plan.alphas.size(), 1u);
    EXPECT_EQ(plan.pieces.size(), 8u);  // 4 pieces of length 1/n, each mirrored
    EXPECT_LE(plan.achieved_constant, 64.0);
    for (std::size_t j = 0; j < freqs.size(); ++j) EXPECT_LE(std::abs(plan.bias[j]), 1.0);
}

TEST(Push, TwoIntervalsAgainstEnumeration)
{
    const std::size_t n = 256;
    BadIntervalSet s;
    s.n = n;
    const Arc u1{0.7, 0.7 + 3.0 / n}, u2{2.1, 2.1 + 5.0 / n};
    s.intervals = {u1, u2, detail::mirror(u2), detail::mirror(u1)};
    std::vector<std::size_t> freqs;
    for (std::size_t k = 1; k <= 2 * n; ++k) freqs.push_back(k);
    auto plan = choose_interval_signs(s, freqs, 1.0 / 32, 9);
    ASSERT_EQ(plan.alphas.size(), 2u);
    const double got = plan.achieved_constant * std::sqrt(plan.gamma_n);

    bool seen = false;
    for (int a1 : {-1, 1})
        for (int a2 : {-1, 1}) {
            std::vector<Arc> arcs;
            std::vector<int> al;
            for (const auto& [arc, a] : {std::pair{u1, a1}, std::pair{u2, a2}})
                for (const Arc& p : detail::split_arc(arc, n, 1.0)) {
                    arcs.push_back(p);
                    al.push_back(a);
                    arcs.push_back(detail::mirror(p));
                    al.push_back(-a);
                }
            double worst = 0.0;
            for (double d : compute_push_deltas(arcs, al, freqs)) worst = std::max(worst, std::abs(d));
            if (a1 == plan.alphas[0] && a2 == plan.alphas[1]) {
                EXPECT_NEAR(worst, got, 1e-9);
                seen = true;
            }
        }
    EXPECT_TRUE(seen);
    EXPECT_LE(got, 64.0 * std::sqrt(plan.gamma_n));
}

TEST(Push, SixteenIntervalsAtN256)
{
    const std::size_t n = 256;
    Rng gen(21);
    BadIntervalSet s;
    s.n = n;
    std::vector<Arc> up;
    for (std::size_t i = 0; i < 8; ++i) {
        const double a = 0.2 + 0.35 * static_cast<double>(i) + 0.1 * uniform01(gen);
        up.push_back({a, a + (1.0 + 6.0 * uniform01(gen)) / n});
    }
    for (const Arc& a : up) {
        s.intervals.push_back(a);
        s.intervals.push_back(detail::mirror(a));
    }
    std::sort(s.intervals.begin(), s.intervals.end(), [](const Arc& x, const Arc& y) { return x.a < y.a; });
    std::vector<std::size_t> freqs;
    for (std::size_t k = 1; k <= 2 * n; ++k) freqs.push_back(k);
    auto plan = choose_interval_signs(s, freqs, 1.0 / 32, 4);
    EXPECT_LE(plan.achieved_constant, 8.0 * 4.0);
    double worst = 0.0;
    for (double d : plan.deltas) worst = std::max(worst, std::abs(d));
    EXPECT_NEAR(worst / std::sqrt(plan.gamma_n), plan.achieved_constant, 1e-12);
}

TEST(Push, IntervalThroughZeroRejected)
{
    BadIntervalSet s;
    s.n = 256;
    s.intervals = {Arc{2 * pi - 0.01, 2 * pi + 0.01}};
    EXPECT_THROW(choose_interval_signs(s, {1, 2, 3}, 1.0 / 32, 1), validation_failure);
}

TEST(SinePart, SmallInstanceAgainstExhaustiveSearch)
{
    const std::size_t n = 8;  // |S| = 16
    const Arc I{1.3, 1.3 + 0.5 / n};
    PushPlan plan = single_interval_plan(n, I, 1);
    const double delta = 0.025;
    SinePart sp = build_sine_part(plan, n, 17);
    validate_sine_part(sp, plan, n, 9.5, delta, 128);

    // Every sign pattern, scored by the same validation.
    double best = -1e9;
    SinePart probe;
    probe.freqs = plan.freqs;
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
        probe.signs.resize(16);
        for (std::size_t b = 0; b < 16; ++b) probe.signs[b] = (mask >> b & 1u) ? 1 : -1;
        validate_sine_part(probe, plan, n, 9.5, delta, 8);
        if (probe.upper_ok) best = std::max(best, probe.min_on_intervals);
    }
    ASSERT_GE(best, delta);
    EXPECT_TRUE(sp.upper_ok);
    EXPECT_TRUE(sp.lower_ok) << sp.min_on_intervals;
    EXPECT_LE(sp.min_on_intervals, best + 1e-9);
}

TEST(SinePart, NoIntervalsAnyAssignmentPasses)
{
    PushPlan plan;
    plan.freqs = {1, 2, 3, 4};
    plan.bias.assign(4, 0.0);
    SinePart sp;
    sp.freqs = plan.freqs;
    sp.signs = {1, -1, -1, 1};
    validate_sine_part(sp, plan, 2, 9.5, 0.5, 16);
    EXPECT_TRUE(sp.lower_ok);
}

TEST(SinePart, BiasedSamplingMatchesClosedFormMean)
{
    const std::size_t n = 256;
    auto cp = build_cosine_part(n, 1.0 / 32);
    auto set = detect_bad_intervals([&](double x) { return cp(x) + 0.5; }, n, 0.025, 8, {});
    auto plan = choose_interval_signs(set, sine_frequencies(n, cp), 1.0 / 32, 2);
    Rng gen(99);
    std::vector<double> buf;
    for (std::size_t g = 0; g < std::min<std::size_t>(plan.intervals.size(), 6); ++g) {
        const double x = 0.5 * (plan.intervals[g].a + plan.intervals[g].b);
        fill_sines(x, plan.freqs.back(), buf);
        double mean = 0.0, var = 0.0;
        for (std::size_t j = 0; j < plan.freqs.size(); ++j) {
            const double s = buf[plan.freqs[j]], b = plan.bias[j];
            mean += b * s;
            var += (1 - b * b) * s * s;
        }
        const int trials = 10000;
        double acc = 0.0;
        for (int t = 0; t < trials; ++t) {
            double v = 0.0;
            for (std::size_t j = 0; j < plan.freqs.size(); ++j)
                v += (uniform01(gen) < 0.5 * (1 + plan.bias[j]) ? 1.0 : -1.0) * buf[plan.freqs[j]];
            acc += v;
        }
        const double emp = acc / trials;
        EXPECT_NEAR(emp, mean, 4.5 * std::sqrt(var / trials)) << g;
        EXPECT_GT(plan.alphas[g] * mean, 0.0) << g;
    }
}

TEST(FlatLittlewood, PipelineOutputAtN256)
{
    const std::size_t n = 256;
    auto r = assemble_flat_littlewood(n, 1.0 / 32, 1.0 / 128, 7);
    const auto& p = r.poly;
    ASSERT_EQ(p.coefficients().size(), 4 * n + 1);
    EXPECT_EQ(p.degree(), 4 * n);
    for (int e : p.coefficients()) ASSERT_TRUE(e == 1 || e == -1);
    for (std::size_t k = 1; k <= 2 * n; ++k) {
        const bool cos_freq = std::binary_search(p.cosine_frequencies().begin(), p.cosine_frequencies().end(), k);
        EXPECT_EQ(p.eps(static_cast<long>(k)), (cos_freq ? 1 : -1) * p.eps(-static_cast<long>(k)));
    }
    for (std::size_t k : p.cosine_frequencies()) {
        EXPECT_GE(static_cast<double>(k), n / 32.0);
        EXPECT_LE(static_cast<double>(k), 3.0 * n / 32.0);
    }
    EXPECT_EQ(p.cosine_frequencies().size() + p.sine_frequencies().size(), 2 * n);

    const auto fr = flatness_report(p, 8);
    EXPECT_NEAR(fr.mean_square / (4.0 * n + 1), 1.0, 1e-6);
    EXPECT_GE(r.min_normalized, 0.02);
    EXPECT_LE(r.max_normalized, 10.0);

    // f(x) = e^{-2n i x} P(e^{ix}); f(-x) = conj f(x).
    for (double x : {0.3, 1.9, 4.0}) {
        const auto viaP = std::polar(1.0, -2.0 * n * x) * evaluate_at_angle(p.coefficients(), x);
        EXPECT_LT(std::abs(viaP - p.f(x)), 1e-8);
        EXPECT_LT(std::abs(p.f(-x) - std::conj(p.f(x))), 1e-8);
    }
}

TEST(FlatLittlewood, Deterministic)
{
    auto a = assemble_flat_littlewood(256, 1.0 / 32, 1.0 / 128, 3);
    auto b = assemble_flat_littlewood(256, 1.0 / 32, 1.0 / 128, 3);
    EXPECT_EQ(a.poly.coefficients(), b.poly.coefficients());
}

TEST(LittlewoodIo, RoundTrip)
{
    std::vector<int> c{1, -1, -1, 1, 1};
    std::stringstream ss;
    write_coefficients(ss, c);
    EXPECT_EQ(read_coefficients(ss), c);
    std::stringstream bad("1\n-1x\n");
    EXPECT_THROW(read_coefficients(bad), invalid_argument);
}
