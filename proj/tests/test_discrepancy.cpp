#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "pcomb/discrepancy.hpp"
#include "support.hpp"

using namespace pcomb;
using pcomb::testing::random_sign_matrix;

namespace {

// Direct enumeration of every segment {b, b+a, ..., b+ka}.
long ap_segments_oracle(const SignedColoring& f)
{
    const long n = static_cast<long>(f.size());
    long best = 0;
    for (long a = 1; a <= n; ++a)
        for (long b = 1; b <= n; ++b)
            for (long last = b; last <= n; last += a) {
                long s = 0;
                for (long p = b; p <= last; p += a) s += f[static_cast<std::size_t>(p - 1)];
                best = std::max(best, std::labs(s));
            }
    return best;
}

// Feasibility of {x in {-1,0,1}^n : >= n/4 nonzeros, ||Ax||_inf <= bound}
// by listing all 3^n vectors.
bool ternary_feasible(const Eigen::MatrixXd& a, double bound)
{
    const auto n = a.cols();
    long total = 1;
    for (Eigen::Index i = 0; i < n; ++i) total *= 3;
    Eigen::VectorXd x(n);
    for (long code = 0; code < total; ++code) {
        long c = code;
        long nz = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            x[i] = static_cast<double>(c % 3) - 1.0;
            nz += x[i] != 0;
            c /= 3;
        }
        if (4 * nz < n) continue;
        if (a.rows() == 0 || (a * x).cwiseAbs().maxCoeff() <= bound + 1e-9) return true;
    }
    return false;
}

double binomial_abs_median(int n)
{
    // Distribution of |2 Bin(n,1/2) - n|.
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    double c = std::pow(0.5, n);
    for (int k = 0; k <= n; ++k) {
        p[static_cast<std::size_t>(std::abs(2 * k - n))] += c;
        c = c * (n - k) / (k + 1);
    }
    double acc = 0;
    for (int s = 0; s <= n; ++s) {
        acc += p[static_cast<std::size_t>(s)];
        if (acc >= 0.5) return s;
    }
    return n;
}

} // namespace

TEST(ApDiscrepancy, ConstantColoring)
{
    EXPECT_EQ(ap_discrepancy(SignedColoring(8, 1)), 8);
    EXPECT_EQ(ap_discrepancy(SignedColoring{1}), 1);
}

TEST(ApDiscrepancy, AlternatingColoring)
{
    const SignedColoring f{1, -1, 1, -1, 1, -1, 1, -1};
    const auto r = ap_discrepancy_report(f);
    EXPECT_EQ(r.prefix_max, 4);
    EXPECT_EQ(r.full_max, 4);
    EXPECT_EQ(r.step, 2u);
}

TEST(ApDiscrepancy, MatchesSegmentEnumeration)
{
    Rng gen(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + uniform_index(gen, 30);
        SignedColoring f(n);
        for (auto& v : f) v = random_sign(gen);
        const auto r = ap_discrepancy_report(f);
        EXPECT_EQ(r.prefix_max, ap_segments_oracle(f));
        EXPECT_GE(r.prefix_max, r.full_max);
        long total = 0;
        for (int v : f) total += v;
        EXPECT_GE(r.prefix_max, std::labs(total));
    }
}

TEST(ApDiscrepancy, RejectsNonSigns)
{
    EXPECT_THROW(ap_discrepancy(SignedColoring{1, 0}), pcomb::invalid_argument);
    EXPECT_THROW(ap_discrepancy(SignedColoring{}), pcomb::invalid_argument);
}

TEST(RandomBaseline, TrivialSystems)
{
    EXPECT_EQ(random_coloring_baseline(ConstraintSystem::uniform(Eigen::MatrixXd::Zero(1, 1), 1.0), 5, 1).median_inf_norm, 0.0);
    const auto id = random_coloring_baseline(ConstraintSystem::uniform(Eigen::MatrixXd::Identity(6, 6), 1.0), 9, 2);
    EXPECT_EQ(id.median_inf_norm, 1.0);
    EXPECT_EQ(id.max_inf_norm, 1.0);
    EXPECT_THROW(random_coloring_baseline(ConstraintSystem::uniform(Eigen::MatrixXd::Identity(2, 2), 1.0), 0, 1),
                 pcomb::invalid_argument);
}

TEST(RandomBaseline, AllOnesMatchesBinomialMedian)
{
    const auto s = random_coloring_baseline(ConstraintSystem::uniform(Eigen::MatrixXd::Ones(64, 64), 1.0, true), 200, 5);
    EXPECT_GE(s.median_inf_norm, 4.0);
    EXPECT_LE(s.median_inf_norm, 16.0);
    EXPECT_NEAR(s.median_inf_norm, binomial_abs_median(64), 2.0);
}

TEST(RandomBaseline, Deterministic)
{
    const auto sys = ConstraintSystem::uniform(random_sign_matrix(20, 20, 3), 1.0, true);
    const auto a = random_coloring_baseline(sys, 50, 9);
    const auto b = random_coloring_baseline(sys, 50, 9);
    EXPECT_EQ(a.median_inf_norm, b.median_inf_norm);
    EXPECT_EQ(a.max_inf_norm, b.max_inf_norm);
}

TEST(BeckFiala, SingleEdge)
{
    const Hypergraph h(3, {{0, 1, 2}});
    EXPECT_LE(h.discrepancy(beck_fiala(h)), 1);
}

TEST(BeckFiala, EmptyHypergraph)
{
    const Hypergraph h(5, {});
    const auto f = beck_fiala(h);
    EXPECT_EQ(f.size(), 5u);
    check_signs(f);
    EXPECT_EQ(h.discrepancy(f), 0);
}

TEST(BeckFiala, FanoPlane)
{
    const auto h = pcomb::testing::fano_plane();
    ASSERT_EQ(h.max_degree(), 3u);
    const long opt = pcomb::testing::exhaustive_hypergraph_discrepancy(h);
    const long got = h.discrepancy(beck_fiala(h));
    EXPECT_LE(got, 5);
    EXPECT_GE(got, opt);
    // Not 2-colorable, so some line is monochromatic.
    EXPECT_EQ(opt, 3);
}

TEST(BeckFiala, RandomHypergraphsWithinTwoDMinusOne)
{
    Rng gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + uniform_index(gen, 120);
        const std::size_t d = 1 + uniform_index(gen, 10);
        const std::size_t m = 1 + uniform_index(gen, 2 * n);
        const auto h = pcomb::testing::random_hypergraph(n, m, d, gen());
        const auto f = beck_fiala(h);
        check_signs(f);
        const long bound = h.max_degree() == 0 ? 0 : 2 * static_cast<long>(h.max_degree()) - 1;
        EXPECT_LE(h.discrepancy(f), bound) << "trial " << trial;
    }
}

TEST(BeckFiala, SmallInstancesAtLeastOptimum)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto h = pcomb::testing::random_hypergraph(10, 8, 3, seed);
        EXPECT_GE(h.discrepancy(beck_fiala(h)), pcomb::testing::exhaustive_hypergraph_discrepancy(h));
    }
}

TEST(LovettMeka, RejectsInadmissibleBudgets)
{
    const auto sys = ConstraintSystem::uniform(random_sign_matrix(4, 16, 1), 7.0);
    EXPECT_GT(budget_mass(sys.budgets), 1.0 / 16.0);
    EXPECT_THROW(lovett_meka_partial_coloring(sys, PartialColoring::zeros(16), 1), pcomb::invalid_argument);
}

TEST(LovettMeka, NoConstraintsFreezesQuarter)
{
    const ConstraintSystem sys(Eigen::MatrixXd(0, 40), {});
    const auto x = lovett_meka_partial_coloring(sys, PartialColoring::zeros(40), 3);
    EXPECT_GE(4 * x.frozen_count(), 40u);
}

TEST(LovettMeka, AlreadyColoredIsFixedPoint)
{
    Eigen::VectorXd s(6);
    s << 1, -1, -1, 1, 1, -1;
    const auto sys = ConstraintSystem::uniform(random_sign_matrix(2, 6, 4), 9.0);
    const auto x = lovett_meka_partial_coloring(sys, PartialColoring(s), 5);
    EXPECT_EQ(x.values, s);
    EXPECT_EQ(x.frozen_count(), 6u);
}

TEST(LovettMeka, SixteenByFourExample)
{
    const auto a = random_sign_matrix(4, 16, 77);
    const auto sys = ConstraintSystem::uniform(a, 9.0, true);
    ASSERT_LE(budget_mass(sys.budgets), 1.0 / 16.0);
    int successes = 0;
    for (std::uint64_t seed = 1; seed <= 5 && successes == 0; ++seed) {
        try {
            const auto x = lovett_meka_partial_coloring(sys, PartialColoring::zeros(16), seed);
            ++successes;
            EXPECT_LE((a * x.values).cwiseAbs().maxCoeff(), 36.0 + 1e-6 * 4.0);
            EXPECT_GE(x.frozen_count(), 4u);
            EXPECT_TRUE(exhaustive_partial_coloring_oracle(sys, 36.0).has_value());
        } catch (const retryable_failure&) {
        }
    }
    EXPECT_EQ(successes, 1);
}

TEST(LovettMeka, PostconditionsOnTightBudgets)
{
    // m = 16 rows with c = 4 sqrt(ln 256): the gate holds with equality.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto a = random_sign_matrix(16, 48, 100 + seed);
        const double c = 4.0 * std::sqrt(std::log(16.0 * 16.0));
        const auto sys = ConstraintSystem::uniform(a, c, true);
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(48);
        x0[3] = 1.0;
        x0[7] = 0.5;
        try {
            const auto x = lovett_meka_partial_coloring(sys, PartialColoring(x0), seed);
            EXPECT_LE((a * (x.values - x0)).cwiseAbs().maxCoeff(), c * std::sqrt(48.0) * (1 + 1e-6));
            EXPECT_GE(4 * x.frozen_count(), 48u);
            EXPECT_EQ(x.values[3], 1.0);
        } catch (const retryable_failure&) {
        }
    }
}

TEST(StickyWalk, RespectsTightBudgetsAndBox)
{
    Rng gen(8);
    const auto a = random_sign_matrix(30, 40, 9);
    const Eigen::VectorXd b = Eigen::VectorXd::Constant(30, 2.0);
    const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(40);
    const auto w = sticky_walk(a, b, x0, gen, {});
    EXPECT_LE((a * (w.x - x0)).cwiseAbs().maxCoeff(), 2.0 + 1e-9);
    EXPECT_LE(w.x.cwiseAbs().maxCoeff(), 1.0);
    std::size_t frozen = 0;
    for (Eigen::Index i = 0; i < 40; ++i) frozen += std::abs(w.x[i]) == 1.0;
    EXPECT_EQ(frozen, w.newly_frozen);
    EXPECT_GT(frozen, 0u);
}

TEST(StickyWalk, ZeroBudgetRowIsPreserved)
{
    Rng gen(4);
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(1, 12);
    const auto w = sticky_walk(a, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(12), gen, {});
    EXPECT_NEAR(w.x.sum(), 0.0, 1e-9);
    EXPECT_GE(w.newly_frozen, 6u);
}

TEST(Spencer, TrivialSystems)
{
    const auto z = spencer_coloring(ConstraintSystem::uniform(Eigen::MatrixXd::Zero(8, 8), 0.0, true), 1);
    EXPECT_EQ(z.inf_norm, 0.0);
    EXPECT_EQ(z.signs.size(), 8u);
    const auto id = spencer_coloring(ConstraintSystem::uniform(Eigen::MatrixXd::Identity(10, 10), 0.0, true), 1);
    EXPECT_EQ(id.inf_norm, 1.0);
}

TEST(Spencer, SixtyFourSquareBeatsBaseline)
{
    const auto a = random_sign_matrix(64, 64, 1);
    const auto sys = ConstraintSystem::uniform(a, 0.0, true);
    const auto r = spencer_coloring(sys, 1);
    check_signs(r.signs);
    EXPECT_DOUBLE_EQ(r.inf_norm, inf_norm(a, to_vector(r.signs)));
    EXPECT_LE(r.inf_norm, 120.0);
    EXPECT_LE(r.inf_norm, random_coloring_baseline(sys, 200, 1).median_inf_norm);
}

TEST(Spencer, StaircaseFamilyOneSidedBound)
{
    // Row i is (-1,...,-1, 1,...,1) with i leading -1 entries.
    const int n = 48;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = j < i ? -1.0 : 1.0;
    const auto r = spencer_coloring(ConstraintSystem::uniform(a, 0.0, true), 3);
    EXPECT_LE(r.inf_norm, 15.0 * std::sqrt(n));
}

TEST(Spencer, GatedScheduleStaysWithinKImpl)
{
    SpencerOptions opt;
    opt.schedule = SpencerSchedule::gated;
    opt.attempts = 1;
    const auto a = random_sign_matrix(32, 32, 12);
    const auto r = spencer_coloring(ConstraintSystem::uniform(a, 0.0, true), 12, opt);
    EXPECT_LE(r.inf_norm, 15.0 * std::sqrt(32.0));
    EXPECT_GE(r.budget_series + 1e-9, r.inf_norm);
}

TEST(Spencer, Deterministic)
{
    const auto sys = ConstraintSystem::uniform(random_sign_matrix(32, 32, 5), 0.0, true);
    EXPECT_EQ(spencer_coloring(sys, 9).signs, spencer_coloring(sys, 9).signs);
}

TEST(PartialColoringOracle, ZeroMatrix)
{
    const auto x = exhaustive_partial_coloring_oracle(ConstraintSystem::uniform(Eigen::MatrixXd::Zero(3, 8), 0.0), 0.0);
    ASSERT_TRUE(x.has_value());
    EXPECT_GE(4 * x->frozen_count(), 8u);
}

TEST(PartialColoringOracle, IdentityBoundOne)
{
    const auto x = exhaustive_partial_coloring_oracle(ConstraintSystem::uniform(Eigen::MatrixXd::Identity(4, 4), 0.0), 1.0);
    ASSERT_TRUE(x.has_value());
    EXPECT_GE(x->frozen_count(), 1u);
    EXPECT_LE(x->values.cwiseAbs().maxCoeff(), 1.0);
}

TEST(PartialColoringOracle, RandomTwelveAtSixRootN)
{
    const auto a = random_sign_matrix(12, 12, 42);
    const double bound = 6.0 * std::sqrt(12.0);
    const auto x = exhaustive_partial_coloring_oracle(ConstraintSystem::uniform(a, 0.0), bound);
    ASSERT_TRUE(x.has_value());
    EXPECT_LE((a * x->values).cwiseAbs().maxCoeff(), bound);
    EXPECT_GE(4 * x->frozen_count(), 12u);
}

TEST(PartialColoringOracle, AgreesWithTernaryEnumerationAndIsMonotone)
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto a = random_sign_matrix(7, 8, seed);
        const auto sys = ConstraintSystem::uniform(a, 0.0);
        bool seen_none = false;
        for (double bound : {6.0, 4.0, 3.0, 2.0, 1.0, 0.0}) {
            const auto x = exhaustive_partial_coloring_oracle(sys, bound);
            EXPECT_EQ(x.has_value(), ternary_feasible(a, bound)) << "seed " << seed << " bound " << bound;
            if (x) {
                EXPECT_FALSE(seen_none);
                EXPECT_LE((a * x->values).cwiseAbs().maxCoeff(), bound + 1e-9);
            } else {
                seen_none = true;
            }
        }
    }
}

TEST(PartialColoringOracle, SizeLimit)
{
    EXPECT_THROW(exhaustive_partial_coloring_oracle(ConstraintSystem::uniform(Eigen::MatrixXd::Zero(1, 21), 0.0), 1.0),
                 size_limit_error);
}

TEST(DiscrepancyIo, MatrixMarketRoundTrip)
{
    const auto a = random_sign_matrix(5, 7, 3);
    std::stringstream ss;
    write_matrix_market(ss, a);
    EXPECT_EQ(read_matrix_market(ss), a);
}

TEST(DiscrepancyIo, MatrixMarketArrayAndErrors)
{
    std::istringstream arr("%%MatrixMarket matrix array real general\n% comment\n2 2\n1\n2\n3\n4\n");
    Eigen::MatrixXd expect(2, 2);
    expect << 1, 3, 2, 4;
    EXPECT_EQ(read_matrix_market(arr), expect);
    std::istringstream bad("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n");
    EXPECT_THROW(read_matrix_market(bad), pcomb::invalid_argument);
    std::istringstream range("%%MatrixMarket matrix coordinate real general\n1 1 1\n2 1 1\n");
    EXPECT_THROW(read_matrix_market(range), pcomb::invalid_argument);
}

TEST(DiscrepancyIo, HypergraphText)
{
    std::istringstream in("# fano\n1 2 3\n1 4 5\n\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n");
    const auto h = read_hypergraph(in);
    EXPECT_EQ(h.vertex_count(), 7u);
    EXPECT_EQ(h.edges().size(), 7u);
    EXPECT_EQ(h.max_degree(), 3u);
    std::stringstream out;
    write_hypergraph(out, h);
    const auto h2 = read_hypergraph(out);
    EXPECT_EQ(h2.edges(), h.edges());
    std::istringstream zero("0 1\n");
    EXPECT_THROW(read_hypergraph(zero), pcomb::invalid_argument);
    std::istringstream dup("1 1\n");
    EXPECT_THROW(read_hypergraph(dup), pcomb::invalid_argument);
}
