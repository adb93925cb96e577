// pcomb: batch front-end. One subcommand per experiment; every run writes a
// JSON report, and optionally a CSV table and an SVG plot.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "pcomb/discrepancy.hpp"
#include "pcomb/littlewood.hpp"
#include "pcomb/lwo.hpp"
#include "pcomb/nibble.hpp"
#include "pcomb/packing.hpp"

#ifndef PCOMB_VERSION
#define PCOMB_VERSION "0.0.0"
#endif

using json = nlohmann::json;
using namespace pcomb;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    json result = json::object();
    cli::Table table;
    std::optional<cli::Svg> plot;
};

struct Command {
    CLI::App* app = nullptr;
    std::shared_ptr<void> params;
    std::vector<std::function<void(json&)>> echo;
    std::function<bool()> randomized = [] { return true; };
    bool plots = false;
    std::function<Output(std::uint64_t)> run;

    template <class T>
    CLI::Option* param(const std::string& flag, T& var, const std::string& desc)
    {
        std::string key = flag.substr(2);
        std::replace(key.begin(), key.end(), '-', '_');
        echo.push_back([key, &var](json& p) { p[key] = var; });
        return app->add_option(flag, var, desc)->capture_default_str();
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write " + path);
    out << text;
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    for (std::string cell; std::getline(ss, cell, ',');) {
        std::size_t used = 0;
        try {
            v.push_back(std::stod(cell, &used));
        } catch (const std::exception&) {
            throw usage_error("bad number in list: " + cell);
        }
        if (used != cell.size()) throw usage_error("bad number in list: " + cell);
    }
    return v;
}

std::vector<double> gaussian_unit(unsigned n, std::uint64_t seed)
{
    Rng gen(seed);
    std::vector<double> v(n);
    for (double& x : v) x = standard_normal(gen);
    return WeightVector::unit(v).entries;
}

json rounds_json(const std::vector<RoundRecord>& rounds)
{
    json a = json::array();
    for (const auto& r : rounds)
        a.push_back({{"round", r.round},
                     {"active", r.active},
                     {"constrained_rows", r.constrained_rows},
                     {"frozen", r.frozen},
                     {"attempts", r.attempts},
                     {"max_deviation", r.max_deviation},
                     {"max_budget", r.max_budget}});
    return a;
}

json stats_json(const GraphStats& s)
{
    return {{"vertices", s.n},
            {"edges", s.edges},
            {"max_degree", s.max_degree},
            {"max_codegree", s.max_codegree},
            {"avg_degree", s.avg_degree}};
}

json packing_json(const PackingReport& r)
{
    return {{"d", r.d},
            {"half_side", r.half_side},
            {"radius", r.radius},
            {"candidates", r.candidates},
            {"pruned", r.pruned},
            {"count", r.count},
            {"window_count", r.window_count},
            {"density", r.density},
            {"window_density", r.window_density},
            {"normalized_occupancy", r.normalized_occupancy},
            {"min_distance", std::isfinite(r.min_distance) ? json(r.min_distance) : json(nullptr)},
            {"valid", r.valid}};
}

cli::Table points_table(const PointCloud& c)
{
    cli::Table t;
    for (unsigned k = 0; k < c.d; ++k) t.header.push_back("x" + std::to_string(k + 1));
    for (std::size_t i = 0; i < c.size(); ++i) t.rows.emplace_back(c.point(i), c.point(i) + c.d);
    return t;
}

json estimate_json(const SmallBallEstimate& e)
{
    return {{"value", e.value},
            {"mode", e.mode == Estimator::exact ? "exact" : "monte-carlo"},
            {"trials", e.trials},
            {"numerator", e.numerator},
            {"standard_error", e.standard_error},
            {"n", e.n},
            {"b", e.b}};
}

Estimator parse_mode(const std::string& m) { return m == "exact" ? Estimator::exact : Estimator::monte_carlo; }

// ---------------------------------------------------------------- discrepancy

void add_spencer(CLI::App& app, Command& c)
{
    struct P {
        std::size_t n = 64, m = 0, attempts = 4, baseline_trials = 101;
        double k_impl = 15.0;
        std::string input;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("spencer", "low-discrepancy coloring of a +-1 matrix by iterated partial coloring");
    c.param("--n", p->n, "columns of the random matrix")->check(CLI::Range(1, 4096));
    c.param("--m", p->m, "rows of the random matrix (0: m = n)")->check(CLI::Range(0, 8192));
    c.param("--input", p->input, "Matrix Market file instead of a random matrix");
    c.param("--attempts", p->attempts, "independent walks, best kept")->check(CLI::Range(1, 64));
    c.param("--k-impl", p->k_impl, "target constant: ||Ax||_inf <= k_impl sqrt(n)");
    c.param("--baseline-trials", p->baseline_trials, "random colorings for the baseline")->check(CLI::Range(1, 100000));
    c.run = [p](std::uint64_t seed) {
        Eigen::MatrixXd a;
        if (!p->input.empty()) {
            std::istringstream in(read_file(p->input));
            a = read_matrix_market(in);
        } else {
            a = random_sign_matrix(static_cast<Eigen::Index>(p->m ? p->m : p->n), static_cast<Eigen::Index>(p->n),
                                   derive_seed(seed, 1));
        }
        const auto sys = ConstraintSystem::uniform(a, 1.0, true);
        SpencerOptions opt;
        opt.attempts = p->attempts;
        opt.k_impl = p->k_impl;
        const auto r = spencer_coloring(sys, derive_seed(seed, 2), opt);
        const auto base = random_coloring_baseline(sys, p->baseline_trials, derive_seed(seed, 3));
        const double rn = std::sqrt(static_cast<double>(sys.dim()));
        Output o;
        o.result = {{"n", sys.dim()},
                    {"m", sys.size()},
                    {"inf_norm", r.inf_norm},
                    {"ratio", r.ratio},
                    {"bound", p->k_impl * rn},
                    {"within_bound", r.within_bound},
                    {"pre_rounding_inf_norm", r.pre_rounding_inf_norm},
                    {"stragglers", r.stragglers},
                    {"attempt", r.attempt},
                    {"baseline_median", base.median_inf_norm},
                    {"baseline_max", base.max_inf_norm},
                    {"rounds", rounds_json(r.rounds)}};
        o.table.header = {"index", "sign"};
        for (std::size_t i = 0; i < r.signs.size(); ++i) o.table.rows.push_back({double(i + 1), double(r.signs[i])});
        return o;
    };
}

void add_beckfiala(CLI::App& app, Command& c)
{
    struct P {
        std::size_t n = 200, edges = 200, degree = 10;
        std::string input;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("beckfiala", "iterative rounding with discrepancy at most 2d - 1");
    c.param("--n", p->n, "vertices of the random hypergraph")->check(CLI::Range(1, 100000));
    c.param("--edges", p->edges, "edges of the random hypergraph")->check(CLI::Range(1, 100000));
    c.param("--degree", p->degree, "maximum vertex degree of the random hypergraph")->check(CLI::Range(1, 1000));
    c.param("--input", p->input, "hypergraph file (one edge per line, 1-based ids)");
    c.randomized = [p] { return p->input.empty(); };
    c.run = [p](std::uint64_t seed) {
        Hypergraph h;
        if (!p->input.empty()) {
            std::istringstream in(read_file(p->input));
            h = read_hypergraph(in);
        } else {
            h = random_bounded_degree_hypergraph(p->n, p->edges, p->degree, derive_seed(seed, 1));
        }
        const auto f = beck_fiala(h);
        const long disc = h.discrepancy(f);
        const long bound = 2 * static_cast<long>(h.max_degree()) - 1;
        if (h.max_degree() > 0 && disc > bound)
            throw validation_failure("discrepancy above 2d - 1", {{"discrepancy", double(disc)}, {"bound", double(bound)}});
        Output o;
        o.result = {{"n", h.vertex_count()},
                    {"edges", h.edges().size()},
                    {"max_degree", h.max_degree()},
                    {"discrepancy", disc},
                    {"bound", std::max(bound, 0L)}};
        o.table.header = {"edge", "size", "sum"};
        for (std::size_t e = 0; e < h.edges().size(); ++e) {
            long s = 0;
            for (std::size_t v : h.edges()[e]) s += f[v];
            o.table.rows.push_back({double(e + 1), double(h.edges()[e].size()), double(s)});
        }
        return o;
    };
}

void add_apdisc(CLI::App& app, Command& c)
{
    struct P {
        std::size_t n = 256;
        std::string input;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("apdisc", "discrepancy of a +-1 sequence over arithmetic progressions");
    c.param("--n", p->n, "length of the random sequence")->check(CLI::Range(1, 20000));
    c.param("--input", p->input, "whitespace-separated +-1 sequence instead of a random one");
    c.randomized = [p] { return p->input.empty(); };
    c.run = [p](std::uint64_t seed) {
        SignedColoring f;
        if (!p->input.empty()) {
            std::istringstream in(read_file(p->input));
            f = read_coefficients(in);
        } else {
            Rng gen(derive_seed(seed, 1));
            for (std::size_t i = 0; i < p->n; ++i) f.push_back(random_sign(gen));
        }
        const auto r = ap_discrepancy_report(f);
        Output o;
        o.result = {{"n", f.size()},
                    {"prefix_max", r.prefix_max},
                    {"full_max", r.full_max},
                    {"step", r.step},
                    {"start", r.start},
                    {"length", r.length},
                    {"prefix_max_over_sqrt_n", double(r.prefix_max) / std::sqrt(double(f.size()))}};
        o.table.header = {"position", "sign"};
        for (std::size_t i = 0; i < f.size(); ++i) o.table.rows.push_back({double(i + 1), double(f[i])});
        return o;
    };
}

// ----------------------------------------------------------------- littlewood

void add_rs(CLI::App& app, Command& c)
{
    struct P {
        unsigned t = 10;
        std::size_t grid = 4096;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("rs", "Rudin-Shapiro pair and the identity |P|^2 + |Q|^2 = 2^(t+1)");
    c.param("--t", p->t, "level; the polynomials have 2^t coefficients")->check(CLI::Range(0, 20));
    c.param("--grid", p->grid, "evaluation points on the circle")->check(CLI::Range(1, 1 << 24));
    c.randomized = [] { return false; };
    c.run = [p](std::uint64_t) {
        const auto rs = rudin_shapiro(p->t);
        if (p->grid < rs.p.size()) throw usage_error("--grid must be at least 2^t");
        const auto pv = evaluate_on_circle(rs.p, p->grid), qv = evaluate_on_circle(rs.q, p->grid);
        const double target = std::ldexp(1.0, static_cast<int>(p->t) + 1);
        double err = 0.0, psup = 0.0, qsup = 0.0;
        for (std::size_t j = 0; j < p->grid; ++j) {
            err = std::max(err, std::abs(std::norm(pv[j]) + std::norm(qv[j]) - target) / target);
            psup = std::max(psup, std::abs(pv[j]));
            qsup = std::max(qsup, std::abs(qv[j]));
        }
        Output o;
        o.result = {{"t", p->t},
                    {"length", rs.p.size()},
                    {"max_relative_identity_error", err},
                    {"p_sup", psup},
                    {"q_sup", qsup},
                    {"p_sup_over_sqrt_length", psup / std::sqrt(double(rs.p.size()))}};
        o.table.header = {"k", "p", "q"};
        for (std::size_t k = 0; k < rs.p.size(); ++k) o.table.rows.push_back({double(k), double(rs.p[k]), double(rs.q[k])});
        return o;
    };
}

void add_flatpoly(CLI::App& app, Command& c)
{
    struct P {
        std::size_t n = 256, retries = 10, grid = 64;
        double gamma = 0.03125, delta = 0.0;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("flatpoly", "flat Littlewood polynomial of degree 4n");
    c.param("--n", p->n, "half-degree parameter; the polynomial has 4n + 1 coefficients")->check(CLI::Range(16, 8192));
    c.param("--gamma", p->gamma, "cosine-part fraction in (0, 1/8]")->check(CLI::Range(1e-6, 0.125));
    c.param("--delta", p->delta, "bad-interval threshold (0: gamma / 4)")->check(CLI::Range(0.0, 1.0));
    c.param("--retries", p->retries, "retry budget for the randomized stages")->check(CLI::Range(1, 100));
    c.param("--grid", p->grid, "flatness grid multiplier (points per degree)")->check(CLI::Range(1, 1024));
    c.plots = true;
    c.run = [p](std::uint64_t seed) {
        FlatLittlewoodOptions opt;
        opt.retries = p->retries;
        opt.flatness_grid = p->grid;
        const double delta = p->delta > 0 ? p->delta : p->gamma / 4;
        const auto r = assemble_flat_littlewood(p->n, p->gamma, delta, seed, opt);
        const auto& coeffs = r.poly.coefficients();
        const auto vals = evaluate_on_circle(coeffs, r.flatness.grid_points);
        double sq = 0.0;
        for (const auto& z : vals) sq += std::norm(z);
        const double parseval = std::abs(sq / double(vals.size()) - double(coeffs.size())) / double(coeffs.size());
        Output o;
        o.result = {{"n", p->n},
                    {"degree", r.poly.degree()},
                    {"min_abs", r.flatness.min_abs},
                    {"max_abs", r.flatness.max_abs},
                    {"ratio", r.flatness.ratio},
                    {"min_normalized", r.min_normalized},
                    {"max_normalized", r.max_normalized},
                    {"argmin", r.flatness.argmin},
                    {"argmax", r.flatness.argmax},
                    {"grid_points", r.flatness.grid_points},
                    {"parseval_relative_error", parseval},
                    {"attempts", r.attempts},
                    {"delta_used", r.delta_used},
                    {"bad_intervals", r.intervals.intervals.size()}};
        o.table.header = {"power", "coefficient"};
        for (std::size_t k = 0; k < coeffs.size(); ++k) o.table.rows.push_back({double(k), double(coeffs[k])});
        // Min and max per bucket, so narrow dips stay visible.
        const std::size_t buckets = std::min<std::size_t>(vals.size(), 2000);
        std::vector<std::pair<double, double>> pts;
        for (std::size_t b = 0; b < buckets; ++b) {
            const std::size_t lo = b * vals.size() / buckets, hi = (b + 1) * vals.size() / buckets;
            double mn = 1e300, mx = 0;
            for (std::size_t j = lo; j < hi; ++j) {
                mn = std::min(mn, std::abs(vals[j]));
                mx = std::max(mx, std::abs(vals[j]));
            }
            const double th = 2 * std::numbers::pi * double(lo) / double(vals.size());
            pts.emplace_back(th, mn);
            pts.emplace_back(th, mx);
        }
        const double root = std::sqrt(4.0 * double(p->n));
        o.plot.emplace(0.0, 2 * std::numbers::pi, 0.0, r.flatness.max_abs * 1.05, "|P(e^{i theta})|", "theta", "|P|");
        o.plot->polyline(pts, "steelblue");
        o.plot->hline(root, "gray");
        return o;
    };
}

// --------------------------------------------------------------------- nibble

void add_nibble(CLI::App& app, Command& c)
{
    struct P {
        std::string graph = "sidon", input;
        std::size_t side = 10000, n = 20000, degree = 64, double_count = 0;
        unsigned sidon_m = 6;
        double gamma = 0.125;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("nibble", "semi-random independent set with a per-round trace");
    c.param("--graph", p->graph, "sidon | regular | input")->check(CLI::IsMember({"sidon", "regular", "input"}));
    c.param("--side", p->side, "sidon: each side has this many vertices")->check(CLI::Range(2, 10000000));
    c.param("--sidon-m", p->sidon_m, "sidon: difference set of size 2^m")->check(CLI::Range(1, 6));
    c.param("--n", p->n, "regular: vertices")->check(CLI::Range(1, 10000000));
    c.param("--degree", p->degree, "regular: target degree")->check(CLI::Range(1, 10000));
    c.param("--input", p->input, "input: edge list file (1-based)");
    c.param("--gamma", p->gamma, "nibble rate gamma in (0, 1/4]")->check(CLI::Range(1e-6, 0.25));
    c.param("--double-count", p->double_count, "double-counting samples to record")->check(CLI::Range(0, 100000));
    c.run = [p](std::uint64_t seed) {
        SparseGraph g;
        if (p->graph == "sidon") {
            g = sidon_cayley_graph(p->side, p->sidon_m, derive_seed(seed, 1));
        } else if (p->graph == "regular") {
            g = random_near_regular_graph(p->n, p->degree, derive_seed(seed, 1));
        } else {
            if (p->input.empty()) throw usage_error("--graph input needs --input");
            std::istringstream in(read_file(p->input));
            g = read_edge_list(in);
        }
        NibbleOptions opt;
        opt.gamma = p->gamma;
        opt.double_count_samples = p->double_count;
        const auto r = nibble_independent_set(g, derive_seed(seed, 2), opt);
        detail::assert_independent(g, r.set);
        const auto greedy = greedy_independent_set(g, derive_seed(seed, 3));
        const auto s = graph_stats(g);
        std::size_t dc_holds = 0;
        for (const auto& d : r.double_count) dc_holds += d.holds;
        Output o;
        o.result = {{"graph", stats_json(s)},
                    {"size", r.set.size()},
                    {"nibble_size", r.nibble_size},
                    {"greedy_finish_size", r.greedy_size},
                    {"rounds", r.trace.size()},
                    {"shearer_target", shearer_target(double(s.n), double(s.max_degree))},
                    {"greedy_guarantee", double(s.n) / double(s.max_degree + 1)},
                    {"greedy_baseline", greedy.size()},
                    {"independent", true},
                    {"double_count_samples", r.double_count.size()},
                    {"double_count_holds", dc_holds}};
        o.table.header = {"round", "p", "selected", "cleaned", "added", "survivors_before", "survivors", "max_degree",
                          "max_codegree", "avg_degree", "open_fraction", "predicted_open", "predicted_survivors",
                          "survivor_sd"};
        for (const auto& t : r.trace)
            o.table.rows.push_back({double(t.round), t.p, double(t.selected), double(t.cleaned), double(t.added),
                                    double(t.survivors_before), double(t.survivors), double(t.max_degree),
                                    double(t.max_codegree), t.avg_degree, t.open_fraction, t.predicted_open,
                                    t.predicted_survivors, t.survivor_sd});
        return o;
    };
}

// -------------------------------------------------------------------- packing

void add_pack(CLI::App& app, Command& c)
{
    struct P {
        unsigned d = 2;
        double intensity = 10.0, half_side = 12.0, prune = 0.25;
        std::string method = "nibble";
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("pack", "packing of unit-volume balls from a Poisson sample");
    c.param("--d", p->d, "dimension")->check(CLI::Range(1, 64));
    c.param("--intensity", p->intensity, "Poisson intensity (points per unit volume)")->check(CLI::Range(0.0, 1e9));
    c.param("--half-side", p->half_side, "the box is [-L, L]^d")->check(CLI::Range(1e-9, 1e9));
    c.param("--method", p->method, "nibble | greedy")->check(CLI::IsMember({"nibble", "greedy"}));
    c.param("--prune", p->prune, "nibble: prune floor as a fraction of r_d")->check(CLI::Range(0.0, 2.0));
    c.plots = true;
    c.run = [p](std::uint64_t seed) {
        Output o;
        PackingReport rep;
        if (p->method == "nibble") {
            PackingOptions opt;
            opt.prune_fraction = p->prune;
            opt.nibble.track_codegree = false;
            auto r = nibble_packing_pipeline(p->d, p->intensity, p->half_side, seed, opt);
            o.result = packing_json(r.report);
            o.result["graph"] = stats_json(r.graph);
            o.result["rounds"] = r.nibble.trace.size();
            rep = std::move(r.report);
        } else {
            const auto cloud = sample_poisson_box(p->d, p->intensity, p->half_side, derive_seed(seed, 1));
            rep = saturated_greedy_packing(cloud, unit_ball_radius(p->d), derive_seed(seed, 2));
            o.result = packing_json(rep);
        }
        if (!rep.valid) throw validation_failure("packing violates the separation", {{"min_distance", rep.min_distance}});
        o.table = points_table(rep.centers);
        if (p->d == 2) {
            const double L = p->half_side;
            o.plot.emplace(-L, L, -L, L, "packing, d = 2", "x1", "x2");
            for (std::size_t i = 0; i < rep.centers.size(); ++i)
                o.plot->circle(rep.centers.point(i)[0], rep.centers.point(i)[1], rep.radius, "steelblue");
        }
        return o;
    };
}

void add_codes(CLI::App& app, Command& c)
{
    struct P {
        unsigned d = 2;
        double theta = 2 * std::numbers::pi / 3;
        std::size_t candidates = 600;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("codes", "spherical code with a minimum pairwise angle");
    c.param("--d", p->d, "ambient dimension (sphere S^{d-1})")->check(CLI::Range(2, 64));
    c.param("--theta", p->theta, "minimum angle in radians")->check(CLI::Range(1e-9, std::numbers::pi));
    c.param("--candidates", p->candidates, "candidate points")->check(CLI::Range(1, 20000));
    c.run = [p](std::uint64_t seed) {
        const auto r = spherical_code_pipeline(p->d, p->theta, p->candidates, seed);
        Output o;
        o.result = {{"d", r.d},
                    {"theta_min", r.theta_min},
                    {"candidates", r.candidates},
                    {"count", r.count},
                    {"swaps", r.swaps},
                    {"min_angle", r.min_angle},
                    {"valid", r.valid},
                    {"cover_half_angle", r.cover_half_angle},
                    {"cover_full_angle", r.cover_full_angle}};
        o.table = points_table(r.code);
        return o;
    };
}

// ------------------------------------------------------------------------ lwo

struct VectorParams {
    std::string v;
    unsigned n = 12;
    bool normalize = false;

    void add(Command& c)
    {
        c.param("--v", v, "comma-separated weights (empty: random unit vector of length --n)");
        c.param("--n", n, "length of the random vector")->check(CLI::Range(1, 64));
        c.app->add_flag("--normalize", normalize, "scale --v to unit length");
        c.echo.push_back([this](json& p) { p["normalize"] = normalize; });
    }

    WeightVector make(std::uint64_t seed, bool unit_required) const
    {
        if (v.empty()) return WeightVector::unit(gaussian_unit(n, derive_seed(seed, 1)));
        auto w = parse_list(v);
        if (w.empty()) throw usage_error("--v is empty");
        if (normalize || unit_required) return WeightVector::unit(std::move(w));
        return WeightVector::raw(std::move(w));
    }
};

void add_rho(CLI::App& app, Command& c)
{
    struct P {
        VectorParams vec;
        double eps = 0.0;
        std::string b = "max", mode = "exact";
        std::uint64_t trials = 100000;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("rho", "small-ball probability P(|<X, v> - b| < eps)");
    p->vec.add(c);
    c.param("--eps", p->eps, "radius; 0 means exact equality")->check(CLI::Range(0.0, 1e12));
    c.param("--b", p->b, "shift, or 'max' to maximize over b");
    c.param("--mode", p->mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
    c.param("--trials", p->trials, "Monte Carlo trials");
    c.randomized = [p] { return p->vec.v.empty() || p->mode == "mc"; };
    c.run = [p](std::uint64_t seed) {
        const auto v = p->vec.make(seed, false);
        std::optional<double> b;
        if (p->b != "max") {
            const auto l = parse_list(p->b);
            if (l.size() != 1) throw usage_error("--b takes one number or 'max'");
            b = l[0];
        }
        const auto e = rho_small_ball(v, p->eps, b, parse_mode(p->mode), p->trials, derive_seed(seed, 2));
        Output o;
        o.result = estimate_json(e);
        o.result["maximized"] = !b.has_value();
        o.result["v"] = v.entries;
        return o;
    };
}

void add_lcd(CLI::App& app, Command& c)
{
    struct P {
        VectorParams vec;
        double alpha = 0.01, phi_max = 100.0, step = 0.01;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("lcd", "least common denominator D_alpha(v) by scan and bisection");
    p->vec.add(c);
    c.param("--alpha", p->alpha, "alpha in (0, 1)")->check(CLI::Range(1e-12, 1.0 - 1e-12));
    c.param("--phi-max", p->phi_max, "scan limit")->check(CLI::Range(1e-9, 1e7));
    c.param("--step", p->step, "scan step")->check(CLI::Range(1e-9, 1e6));
    c.randomized = [p] { return p->vec.v.empty(); };
    c.run = [p](std::uint64_t seed) {
        const auto v = p->vec.make(seed, true);
        if (p->phi_max / p->step > 1e7) throw usage_error("--phi-max / --step exceeds 1e7 scan points");
        const auto r = lcd(v, p->alpha, p->phi_max, p->step);
        Output o;
        o.result = {{"found", r.found},
                    {"value", r.found ? json(r.value) : json(nullptr)},
                    {"threshold", r.threshold},
                    {"phi_max", r.phi_max},
                    {"grid_step", r.grid_step},
                    {"scanned", r.margin.size()},
                    {"v", v.entries}};
        o.table.header = {"phi", "margin"};
        for (const auto& [phi, m] : r.margin) o.table.rows.push_back({phi, m});
        return o;
    };
}

void add_joint(CLI::App& app, Command& c)
{
    struct P {
        unsigned n = 12, k = 4;
        double eps = 0.3, beta = 0.3;
        std::string mode = "exact";
        std::uint64_t trials = 100000;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("joint", "joint small-ball probability against k orthonormal constraints");
    c.param("--n", p->n, "dimension")->check(CLI::Range(2, 64));
    c.param("--k", p->k, "largest number of constraints; the family runs over 0..k")->check(CLI::Range(0, 63));
    c.param("--eps", p->eps, "radius for <X, v>")->check(CLI::Range(0.0, 1e6));
    c.param("--beta", p->beta, "radius for each <X, w_i>")->check(CLI::Range(0.0, 1e6));
    c.param("--mode", p->mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
    c.param("--trials", p->trials, "Monte Carlo trials");
    c.run = [p](std::uint64_t seed) {
        if (p->k + 1 > p->n) throw usage_error("need k + 1 <= n");
        const auto f = joint_fixture(p->n, p->k, derive_seed(seed, 1));
        Output o;
        json fam = json::array();
        o.table.header = {"k", "joint", "marginal", "w_only", "product", "product_bound", "ratio"};
        bool non_increasing = true;
        double prev = 2.0;
        for (unsigned j = 0; j <= p->k; ++j) {
            const std::vector<WeightVector> W(f.W.begin(), f.W.begin() + j);
            const auto r = joint_small_ball(f.v, W, p->eps, p->beta, parse_mode(p->mode), p->trials, derive_seed(seed, 2, j));
            non_increasing = non_increasing && r.joint <= prev;
            prev = r.joint;
            fam.push_back({{"k", r.k},
                           {"joint", r.joint},
                           {"marginal", r.marginal},
                           {"w_only", r.w_only},
                           {"product", r.product},
                           {"product_bound", r.product_bound},
                           {"ratio", r.ratio},
                           {"joint_numerator", r.joint_numerator},
                           {"trials", r.trials},
                           {"standard_error", r.standard_error}});
            o.table.rows.push_back({double(r.k), r.joint, r.marginal, r.w_only, r.product, r.product_bound, r.ratio});
        }
        o.result = {{"family", fam}, {"non_increasing", non_increasing}, {"v", f.v.entries}};
        return o;
    };
}

void add_singularity(CLI::App& app, Command& c)
{
    struct P {
        std::string ensemble = "symmetric";
        unsigned n = 10;
        std::uint64_t trials = 10000;
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("singularity", "singularity frequency of random sign matrices, exact elimination");
    c.param("--ensemble", p->ensemble, "symmetric | iid")->check(CLI::IsMember({"symmetric", "iid"}));
    c.param("--n", p->n, "matrix size")->check(CLI::Range(1, 200));
    c.param("--trials", p->trials, "Monte Carlo trials")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}));
    c.run = [p](std::uint64_t seed) {
        const auto r = singularity_mc(parse_ensemble(p->ensemble), p->n, p->trials, seed);
        Output o;
        o.result = {{"ensemble", to_string(r.ensemble)},
                    {"n", r.n},
                    {"trials", r.trials},
                    {"singular", r.singular},
                    {"p_hat", r.p_hat},
                    {"standard_error", r.standard_error}};
        if (r.has_exact)
            o.result["exact"] = {{"singular", r.exact_singular}, {"total", r.exact_total}, {"value", r.exact}};
        return o;
    };
}

void add_spectrum(CLI::App& app, Command& c)
{
    struct P {
        std::string ensemble = "symmetric", v = "random";
        unsigned n = 40;
        std::uint64_t trials = 2000;
        std::vector<double> eps_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    };
    auto p = std::make_shared<P>();
    c.params = p;
    c.app = app.add_subcommand("spectrum", "least singular value distribution and f_eps(v)");
    c.param("--ensemble", p->ensemble, "symmetric | iid")->check(CLI::IsMember({"symmetric", "iid"}));
    c.param("--n", p->n, "matrix size")->check(CLI::Range(1, 200));
    c.param("--trials", p->trials, "matrices sampled")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{10000000}));
    c.param("--eps-grid", p->eps_grid, "comma-separated eps values")->delimiter(',');
    c.param("--v", p->v, "fixed direction for f_eps: random | e1");
    c.plots = true;
    c.run = [p](std::uint64_t seed) {
        if (p->v != "random" && p->v != "e1") throw usage_error("--v must be random or e1");
        std::vector<double> v;
        if (p->v == "e1") {
            v.assign(p->n, 0.0);
            v[0] = 1.0;
        }
        const auto r = spectrum_mc(parse_ensemble(p->ensemble), p->n, p->trials, p->eps_grid, seed, v);
        auto sorted = r.sigma_min;
        std::sort(sorted.begin(), sorted.end());
        Output o;
        o.result = {{"ensemble", to_string(r.ensemble)},
                    {"n", r.n},
                    {"trials", r.trials},
                    {"eps_grid", r.eps_grid},
                    {"cdf", r.cdf},
                    {"f_eps", r.f_eps},
                    {"sigma_min_min", sorted.front()},
                    {"sigma_min_median", sorted[sorted.size() / 2]},
                    {"sigma_min_max", sorted.back()}};
        std::size_t in_range = 0;
        for (double e : r.eps_grid) in_range += e >= 0.1 && e <= 1.0;
        o.result["cdf_slope"] = in_range >= 2 ? json(cdf_slope(r.eps_grid, r.cdf, 0.1, 1.0)) : json(nullptr);
        o.table.header = {"eps", "cdf", "f_eps"};
        for (std::size_t i = 0; i < r.eps_grid.size(); ++i) o.table.rows.push_back({r.eps_grid[i], r.cdf[i], r.f_eps[i]});
        const double xmax = std::max(1e-9, *std::max_element(r.eps_grid.begin(), r.eps_grid.end()));
        o.plot.emplace(0.0, xmax, 0.0, 1.0, "P(sigma_min sqrt(n) <= eps)", "eps", "probability");
        std::vector<std::pair<double, double>> pts;
        const double rn = std::sqrt(double(r.n));
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] * rn <= xmax) pts.emplace_back(sorted[i] * rn, double(i + 1) / double(sorted.size()));
        if (!pts.empty()) pts.emplace_back(xmax, pts.back().second);
        o.plot->polyline(pts, "steelblue");
        return o;
    };
}

std::string flatten_preamble(const json& meta)
{
    return "# " + meta["tool"].get<std::string>() + " " + meta["version"].get<std::string>() + " " +
           meta["subcommand"].get<std::string>() + " seed=" + (meta["seed"].is_null() ? "none" : meta["seed"].dump()) +
           "\n# parameters: " + meta["parameters"].dump() + "\n";
}

// One-row table of the scalar results, for subcommands without their own.
cli::Table scalar_table(const json& result)
{
    cli::Table t;
    std::vector<double> row;
    for (const auto& [k, v] : result.items())
        if (v.is_number() || v.is_boolean()) {
            t.header.push_back(k);
            row.push_back(v.is_boolean() ? double(v.get<bool>()) : v.get<double>());
        }
    t.rows.push_back(row);
    return t;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pcomb: discrepancy, flat polynomials, nibble, packings and Littlewood-Offord experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PCOMB_VERSION);

    std::optional<std::uint64_t> seed;
    bool entropy = false;
    std::string out, format = "json", plot;

    std::vector<std::unique_ptr<Command>> cmds;
    for (auto add : {add_spencer, add_beckfiala, add_apdisc, add_rs, add_flatpoly, add_nibble, add_pack, add_codes, add_rho,
                     add_lcd, add_joint, add_singularity, add_spectrum}) {
        auto& c = *cmds.emplace_back(std::make_unique<Command>());
        add(app, c);
        auto* s = c.app->add_option("--seed", seed, "64-bit seed (required for randomized runs)");
        c.app->add_flag("--entropy", entropy, "draw the seed from the system entropy source")->excludes(s);
        c.app->add_option("--out", out, "output path (json: report; csv: table, report at <out>.json)");
        c.app->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
        c.app->add_option("--plot", plot, "SVG plot path");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    Command* cmd = nullptr;
    for (auto& c : cmds)
        if (c->app->parsed()) cmd = c.get();

    json meta;
    try {
        if (format == "csv" && out.empty()) throw usage_error("--format csv needs --out");
        if (!plot.empty() && !cmd->plots) throw usage_error(cmd->app->get_name() + " has no plot");
        const bool randomized = cmd->randomized();
        if (entropy) seed = (std::uint64_t{std::random_device{}()} << 32) | std::random_device{}();
        if (randomized && !seed) throw usage_error(cmd->app->get_name() + " is randomized: pass --seed or --entropy");
        json params = json::object();
        for (const auto& e : cmd->echo) e(params);
        meta = {{"tool", "pcomb"},
                {"version", PCOMB_VERSION},
                {"subcommand", cmd->app->get_name()},
                {"seed", seed ? json(*seed) : json(nullptr)},
                {"parameters", params}};
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    json doc = meta;
    auto emit_json = [&](const std::string& path) {
        const std::string text = doc.dump(2) + "\n";
        if (path.empty())
            std::cout << text;
        else
            write_file(path, text);
    };
    try {
        Output o = cmd->run(seed.value_or(0));
        doc["result"] = o.result;
        doc["status"] = "ok";
        if (format == "csv") {
            const cli::Table t = o.table.empty() ? scalar_table(o.result) : o.table;
            write_file(out, t.csv(flatten_preamble(meta)));
            emit_json(out + ".json");
        } else {
            emit_json(out);
        }
        if (!plot.empty() && o.plot) write_file(plot, o.plot->str(meta.dump()));
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const validation_failure& e) {
        doc["status"] = "validation_failure";
        doc["error"] = e.what();
        doc["stats"] = e.stats();
        if (const auto* pf = dynamic_cast<const pipeline_failure*>(&e)) doc["stage"] = pf->stage();
    } catch (const retryable_failure& e) {
        doc["status"] = "validation_failure";
        doc["error"] = e.what();
    } catch (const std::logic_error& e) {
        // pcomb::invalid_argument, size_limit_error and broken postconditions
        // that are input problems all derive from logic_error or length_error.
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    try {
        emit_json(format == "csv" ? out + ".json" : out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    std::cerr << "validation failure: " << doc["error"].get<std::string>() << "\n";
    return 2;
}
