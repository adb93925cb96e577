// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: acceptance PATH_TO_PCOMB [criterion ...]

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcomb/discrepancy.hpp"
#include "pcomb/littlewood.hpp"
#include "pcomb/lwo.hpp"
#include "pcomb/nibble.hpp"
#include "pcomb/packing.hpp"

using namespace pcomb;

namespace {

std::string cli_path;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [violated: " << what << "]";
        }
    }
};

// 1. |P_t|^2 + |Q_t|^2 = 2^{t+1} on a 4096-point grid.
void rudin_shapiro_identity(Verdict& v)
{
    double worst = 0.0;
    for (unsigned t = 0; t <= 12; ++t) {
        const auto rs = rudin_shapiro(t);
        const auto p = evaluate_on_circle(rs.p, 4096), q = evaluate_on_circle(rs.q, 4096);
        const double target = std::ldexp(1.0, static_cast<int>(t) + 1);
        for (std::size_t j = 0; j < 4096; ++j)
            worst = std::max(worst, std::abs(std::norm(p[j]) + std::norm(q[j]) - target) / target);
    }
    v.detail << "max relative error " << worst << " over t = 0..12";
    v.require(worst <= 1e-9, "relative error <= 1e-9");
}

// 2. Beck-Fiala bound 2d - 1 on random hypergraphs; Fano plane against the
// exhaustive optimum.
void beck_fiala_bound(Verdict& v)
{
    std::size_t violations = 0;
    long worst_slack = -1000;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng gen(derive_seed(2, i));
        const std::size_t n = 1 + uniform_index(gen, 200), d = 1 + uniform_index(gen, 10);
        const std::size_t edges = 1 + uniform_index(gen, 2 * n);
        const auto h = random_bounded_degree_hypergraph(n, edges, d, derive_seed(2, i, 1));
        const auto f = beck_fiala(h);
        const long bound = 2 * static_cast<long>(h.max_degree()) - 1;
        for (const auto& e : h.edges()) {
            long s = 0;
            for (std::size_t x : e) s += f[x];
            if (h.max_degree() > 0 && std::abs(s) > bound) ++violations;
            worst_slack = std::max(worst_slack, std::abs(s) - bound);
        }
    }
    const auto fano = fano_plane();
    const long got = fano.discrepancy(beck_fiala(fano));
    long best = 1000;
    SignedColoring f(fano.vertex_count());
    for (unsigned mask = 0; mask < (1u << f.size()); ++mask) {
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = (mask >> i & 1) ? 1 : -1;
        best = std::min(best, fano.discrepancy(f));
    }
    v.detail << "1000 hypergraphs: " << violations << " edges above 2d-1 (max |sum| - bound = " << worst_slack
             << "); Fano " << got << " (optimum " << best << ")";
    v.require(violations == 0, "every edge within 2d - 1");
    v.require(got <= 5 && got >= best, "Fano within [optimum, 5]");
}

// 3. Lovett-Meka postconditions over 500 admissible instances.
void lovett_meka_postconditions(Verdict& v)
{
    const std::size_t sizes[] = {8, 12, 16, 24, 32, 48, 64};
    std::size_t successes = 0, failures = 0, bad_post = 0, heavy = 0, oracle_checked = 0, oracle_missed = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rng gen(derive_seed(3, i));
        const std::size_t n = sizes[i % 7];
        const std::size_t m = 1 + uniform_index(gen, std::min<std::size_t>(n, 16));
        const double tight = 4.0 * std::sqrt(std::log(16.0 * static_cast<double>(m)));
        const bool uniform = n <= 16 || i % 2 == 0;
        std::vector<double> c(m, tight);
        if (!uniform)
            for (double& x : c) x += 2.0 * uniform01(gen);
        const auto a = random_sign_matrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n), derive_seed(3, i, 1));
        const ConstraintSystem sys(a, c, true);
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        if (n > 16 && i % 3 == 0) {
            x0[0] = 1.0;
            x0[1] = -0.5;
        }
        std::size_t fails_here = 0;
        bool any = false;
        for (std::uint64_t t = 0; t < 5; ++t) {
            try {
                const auto x = lovett_meka_partial_coloring(sys, PartialColoring(x0), derive_seed(3, i, 2 + t));
                any = true;
                ++successes;
                const Eigen::VectorXd dev = (a * (x.values - x0)).cwiseAbs();
                bool ok = 4 * x.frozen_count() >= n && x.values.cwiseAbs().maxCoeff() <= 1.0;
                for (std::size_t j = 0; j < m; ++j)
                    ok = ok && dev[static_cast<Eigen::Index>(j)] <= c[j] * std::sqrt(double(n)) * (1 + 1e-9);
                bad_post += !ok;
            } catch (const retryable_failure&) {
                ++fails_here;
                ++failures;
            }
        }
        heavy += fails_here > 1;  // 20% of 5 retries
        if (any && n <= 16) {
            ++oracle_checked;
            oracle_missed += !exhaustive_partial_coloring_oracle(sys, tight * std::sqrt(double(n))).has_value();
        }
    }
    v.detail << successes << " successes, " << failures << " retryable failures over 2500 runs; " << bad_post
             << " postcondition violations; " << heavy << " instances above 20% failures; oracle confirmed "
             << oracle_checked - oracle_missed << "/" << oracle_checked;
    v.require(bad_post == 0, "postconditions on every success");
    v.require(heavy == 0, "failure rate <= 20% per instance");
    v.require(oracle_missed == 0, "oracle feasibility when LM succeeds");
}

// 4. Spencer pipeline: ||Ax|| <= 15 sqrt(n), and at n = 128 no worse than the
// random-coloring median.
void spencer_pipeline(Verdict& v)
{
    for (std::size_t n : {32, 64, 128}) {
        double worst_ratio = 0.0;
        std::size_t above_bound = 0, above_median = 0;
        for (std::uint64_t i = 0; i < 50; ++i) {
            const auto sys = ConstraintSystem::uniform(
                random_sign_matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), derive_seed(4, n, i)), 1.0, true);
            const auto r = spencer_coloring(sys, derive_seed(4, n, 1000 + i));
            const double norm = inf_norm(sys.rows, to_vector(r.signs));
            worst_ratio = std::max(worst_ratio, norm / std::sqrt(double(n)));
            above_bound += norm > 15.0 * std::sqrt(double(n));
            if (n == 128) above_median += norm > random_coloring_baseline(sys, 101, derive_seed(4, n, 2000 + i)).median_inf_norm;
        }
        v.detail << "n=" << n << ": max ||Ax||/sqrt(n) " << worst_ratio;
        if (n == 128) v.detail << ", above baseline median " << above_median << "/50";
        v.detail << "; ";
        v.require(above_bound == 0, "||Ax|| <= 15 sqrt(n) at n = " + std::to_string(n));
        v.require(above_median == 0, "at or below the random median at n = 128");
    }
}

// 5. Flat Littlewood polynomials at n = 256, 1024.
void flat_littlewood(Verdict& v)
{
    const double gamma = 1.0 / 32;
    for (std::size_t n : {256, 1024}) {
        try {
            FlatLittlewoodOptions opt;
            opt.retries = 10;
            opt.flatness_grid = 64;
            const auto r = assemble_flat_littlewood(n, gamma, gamma / 4, 7, opt);
            const auto& c = r.poly.coefficients();
            bool signs = c.size() == 4 * n + 1;
            for (int x : c) signs = signs && (x == 1 || x == -1);
            const auto vals = evaluate_on_circle(c, 64 * 4 * n);
            double sq = 0.0, lo = 1e300, hi = 0.0;
            for (const auto& z : vals) {
                sq += std::norm(z);
                lo = std::min(lo, std::abs(z));
                hi = std::max(hi, std::abs(z));
            }
            const double parseval = std::abs(sq / double(vals.size()) - double(c.size())) / double(c.size());
            const double root = std::sqrt(4.0 * double(n));
            v.detail << "n=" << n << ": attempts " << r.attempts << ", min|P|/sqrt(4n) " << lo / root << ", max|P|/sqrt(4n) "
                     << hi / root << ", Parseval " << parseval << "; ";
            v.require(signs, "all coefficients +-1");
            v.require(r.attempts <= 10, "within 10 retries");
            v.require(parseval <= 1e-6, "Parseval");
            v.require(lo >= 0.02 * root && hi <= 10.0 * root, "flatness at n = " + std::to_string(n));
        } catch (const pipeline_failure& e) {
            v.detail << "n=" << n << ": pipeline failed at " << e.stage() << "; ";
            v.require(false, "pipeline succeeds");
        }
    }
}

// 6. Nibble on a 64-regular graph with n = 20000.
void nibble_independent(Verdict& v)
{
    const auto g = sidon_cayley_graph(10000, 6, 6);
    const auto s = graph_stats(g);
    const double delta = double(s.max_degree), n = double(s.n);
    const double codegree_cap = delta / std::pow(std::log2(delta), 3);
    const auto r = nibble_independent_set(g, 6);
    detail::assert_independent(g, r.set);
    const auto greedy = greedy_independent_set(g, 6);
    const double target = 0.7 * n * std::log(delta) / delta, guarantee = n / (delta + 1);
    v.detail << "n " << s.n << ", max degree " << s.max_degree << ", max codegree " << s.max_codegree << " (cap "
             << codegree_cap << "); |I| " << r.set.size() << " vs 0.7 n ln D / D = " << target
             << ", greedy guarantee n/(D+1) = " << guarantee << ", empirical random greedy " << greedy.size()
             << "; independent";
    v.require(double(s.max_codegree) <= codegree_cap, "input hypothesis max codegree <= D/(log2 D)^3");
    v.require(double(r.set.size()) >= target, "|I| >= 0.7 n ln D / D");
    v.require(double(r.set.size()) >= 2 * guarantee, "|I| >= 2 x greedy guarantee");
}

double min_pair_distance(const PointCloud& c)
{
    long double best = INFINITY;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            long double s = 0;
            for (unsigned k = 0; k < c.d; ++k) {
                const long double t = static_cast<long double>(c.point(i)[k]) - c.point(j)[k];
                s += t * t;
            }
            best = std::min(best, s);
        }
    return static_cast<double>(std::sqrt(best));
}

// 7. Packings: d = 6 greedy density; d = 2 nibble against greedy.
void packings(Verdict& v)
{
    const auto cloud6 = sample_poisson_box(6, 2.0, 3.5, 71);
    const double r6 = unit_ball_radius(6);
    const auto g6 = saturated_greedy_packing(cloud6, r6, 72);
    const double md6 = min_pair_distance(g6.centers);
    v.detail << "d=6 greedy window density " << g6.window_density << " (need " << 0.9 / 64 << ", " << g6.window_count
             << " centres in window); ";
    v.require(g6.window_density >= 0.9 / 64, "d = 6 density");
    v.require(md6 >= 2 * r6 - separation_guard, "d = 6 separation");

    const auto nb = nibble_packing_pipeline(2, 10.0, 12.0, 7);
    const auto g2 = saturated_greedy_packing(sample_poisson_box(2, 10.0, 12.0, derive_seed(7, 1)), unit_ball_radius(2), 7);
    const double md2 = min_pair_distance(nb.report.centers), mg2 = min_pair_distance(g2.centers);
    v.detail << "d=2 nibble window density " << nb.report.window_density << " vs greedy " << g2.window_density
             << "; min distance / 2r: " << md6 / (2 * r6) << ", " << md2 / (2 * unit_ball_radius(2)) << ", "
             << mg2 / (2 * unit_ball_radius(2));
    v.require(nb.report.valid && md2 >= 2 * unit_ball_radius(2) - separation_guard, "d = 2 nibble separation");
    v.require(mg2 >= 2 * unit_ball_radius(2) - separation_guard, "d = 2 greedy separation");
    v.require(std::abs(nb.report.window_density - g2.window_density) <= 0.5 * g2.window_density,
              "d = 2 nibble within 50% of greedy");
}

// 8. Spherical codes.
void spherical_codes(Verdict& v)
{
    const double third = 2 * std::numbers::pi / 3;
    std::size_t wrong_count = 0, bad = 0, runs = 0;
    for (std::uint64_t s = 1; s <= 10; ++s) wrong_count += spherical_code_pipeline(2, third, 600, s).count != 3;
    struct Case {
        unsigned d;
        double theta;
    };
    for (const Case& c : {Case{2, third}, Case{2, 0.5}, Case{3, 1.0}, Case{3, std::numbers::pi / 3}, Case{4, 1.2}, Case{8, 1.3}})
        for (std::uint64_t s = 1; s <= 3; ++s) {
            const auto r = spherical_code_pipeline(c.d, c.theta, 600, s);
            ++runs;
            for (std::size_t i = 0; i < r.code.size(); ++i)
                for (std::size_t j = i + 1; j < r.code.size(); ++j) {
                    long double dot = 0, a = 0, b = 0;
                    for (unsigned k = 0; k < c.d; ++k) {
                        dot += static_cast<long double>(r.code.point(i)[k]) * r.code.point(j)[k];
                        a += static_cast<long double>(r.code.point(i)[k]) * r.code.point(i)[k];
                        b += static_cast<long double>(r.code.point(j)[k]) * r.code.point(j)[k];
                    }
                    const long double cosv = std::clamp(dot / std::sqrt(a * b), -1.0L, 1.0L);
                    bad += std::acos(cosv) < c.theta - separation_guard;
                }
        }
    v.detail << "d=2, theta=2pi/3: " << 10 - wrong_count << "/10 seeds give 3 points; " << bad
             << " close pairs over " << runs << " codes";
    v.require(wrong_count == 0, "exactly 3 points");
    v.require(bad == 0, "pairwise angle >= theta_min");
}

// 9. Littlewood-Offord exact suite.
void littlewood_offord_exact(Verdict& v)
{
    const auto two = rho_small_ball(WeightVector::raw({1, 1}), 0.0, std::nullopt);
    const auto four = rho_small_ball(WeightVector::raw({1, 1, 1, 1}), 0.0, std::nullopt);
    v.require(two.numerator == 2 && two.trials == 4 && two.value == 0.5, "rho((1,1)) = 1/2");
    v.require(four.numerator == 6 && four.trials == 16 && four.value == 6.0 / 16, "rho((1,1,1,1)) = 6/16");

    std::size_t erdos_bad = 0, joint_bad = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng gen(derive_seed(9, i));
        std::vector<double> w(1 + uniform_index(gen, 16));
        for (double& x : w)
            if (i % 2)
                x = (1.0 + double(uniform_index(gen, 3))) * random_sign(gen);
            else
                do x = standard_normal(gen); while (x == 0.0);
        erdos_bad += !erdos_bound_check(WeightVector::raw(w)).holds;
        if (i < 40) {
            const auto u = WeightVector::unit(w);
            const auto j = joint_small_ball(u, {}, 0.3, 0.3);
            const auto r = rho_small_ball(u, 0.3, 0.0);
            joint_bad += j.joint_numerator != r.numerator || std::memcmp(&j.joint, &r.value, sizeof(double)) != 0;
        }
    }
    v.require(erdos_bad == 0, "Erdos bound on 200 vectors");
    v.require(joint_bad == 0, "joint k = 0 equals rho bit for bit");

    const auto s = singularity_mc(Ensemble::symmetric, 2, 100000, 9);
    v.detail << "rho((1,1)) " << two.value << ", rho((1,1,1,1)) " << four.numerator << "/16; Erdos violations " << erdos_bad
             << "/200; joint k=0 mismatches " << joint_bad << "/40; symmetric n=2 exact " << s.exact_singular << "/"
             << s.exact_total << ", Monte Carlo " << s.p_hat << " +- " << s.standard_error;
    v.require(s.has_exact && s.exact_singular * 2 == s.exact_total, "enumeration gives 1/2");
    v.require(std::abs(s.p_hat - 0.5) <= 4 * s.standard_error, "Monte Carlo within 4 sigma");
}

// 10. Joint probability on the n = 12 fixtures.
void negative_correlation(Verdict& v)
{
    double worst_marginal = 0.0, worst_product = 0.0;
    std::size_t increases = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto f = joint_fixture(12, 4, seed);
        std::uint64_t prev = UINT64_MAX;
        for (std::size_t k = 0; k <= 4; ++k) {
            const auto j = joint_small_ball(f.v, {f.W.begin(), f.W.begin() + static_cast<std::ptrdiff_t>(k)}, 0.3, 0.3);
            increases += j.joint_numerator > prev;
            prev = j.joint_numerator;
            if (k >= 2) {
                worst_marginal = std::max(worst_marginal, j.joint / j.marginal);
                worst_product = std::max(worst_product, j.ratio);
            }
        }
    }
    v.detail << "5 fixtures, eps = beta = 0.3: " << increases << " increases in k; max joint/marginal at k>=2 "
             << worst_marginal << "; max joint/(marginal e^-k) " << worst_product << " (informational)";
    v.require(increases == 0, "non-increasing in k");
    v.require(worst_marginal <= 1.05, "joint <= 1.05 marginal for k >= 2");
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 11. Same argv, same seed, same bytes.
void cli_determinism(Verdict& v)
{
    const std::vector<std::string> runs = {
        "spencer --n 48 --seed 11",
        "beckfiala --n 120 --edges 150 --degree 6 --seed 11",
        "apdisc --n 300 --seed 11",
        "rs --t 8",
        "flatpoly --n 128 --gamma 0.0625 --seed 11",
        "nibble --graph regular --n 4000 --degree 32 --seed 11",
        "pack --d 3 --half-side 4 --intensity 4 --seed 11",
        "codes --d 4 --theta 1 --candidates 400 --seed 11",
        "rho --n 14 --eps 0.2 --seed 11",
        "lcd --n 8 --alpha 0.05 --phi-max 50 --seed 11",
        "joint --n 10 --k 3 --mode mc --trials 20000 --seed 11",
        "singularity --ensemble iid --n 12 --trials 500 --seed 11",
        "spectrum --n 16 --trials 200 --seed 11",
    };
    const auto dir = std::filesystem::temp_directory_path() / ("pcomb_determinism_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::size_t same = 0;
    std::vector<std::string> differing;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::string out[2];
        bool ok = true;
        for (int rep = 0; rep < 2; ++rep) {
            const auto file = dir / (std::to_string(i) + "_" + std::to_string(rep) + ".json");
            const std::string cmd = "\"" + cli_path + "\" " + runs[i] + " --out \"" + file.string() + "\"";
            ok = ok && std::system(cmd.c_str()) == 0;
            out[rep] = slurp(file);
        }
        if (ok && !out[0].empty() && out[0] == out[1])
            ++same;
        else
            differing.push_back(runs[i].substr(0, runs[i].find(' ')));
    }
    std::filesystem::remove_all(dir);
    v.detail << same << "/" << runs.size() << " subcommands byte-identical";
    for (const auto& d : differing) v.detail << " " << d;
    v.require(same == runs.size(), "byte-identical reports");
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: acceptance PATH_TO_PCOMB [criterion ...]\n";
        return 1;
    }
    cli_path = argv[1];
    std::set<int> only;
    for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
        {"Rudin-Shapiro identity", rudin_shapiro_identity},
        {"Beck-Fiala bound", beck_fiala_bound},
        {"Lovett-Meka postconditions", lovett_meka_postconditions},
        {"Spencer pipeline", spencer_pipeline},
        {"flat Littlewood polynomials", flat_littlewood},
        {"nibble independent set", nibble_independent},
        {"packings", packings},
        {"spherical codes", spherical_codes},
        {"Littlewood-Offord exact suite", littlewood_offord_exact},
        {"negative-correlation audit", negative_correlation},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !v.pass;
        std::printf("criterion %2d %s: %s (%.1fs) %s\n", id, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), secs,
                    v.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
