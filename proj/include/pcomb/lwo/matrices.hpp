#ifndef PCOMB_LWO_MATRICES_HPP
#define PCOMB_LWO_MATRICES_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "../core/error.hpp"
#include "../core/random.hpp"
#include "exact_form.hpp"

namespace pcomb {

enum class Ensemble { symmetric, iid };

inline const char* to_string(Ensemble e) { return e == Ensemble::symmetric ? "symmetric" : "iid"; }

inline Ensemble parse_ensemble(const std::string& s)
{
    if (s == "symmetric") return Ensemble::symmetric;
    if (s == "iid") return Ensemble::iid;
    throw invalid_argument("unknown ensemble: " + s);
}

// Row-major n x n sign matrix. Symmetric: independent upper triangle with
// diagonal, mirrored.
template <class Gen>
std::vector<int> sample_sign_matrix(Ensemble e, unsigned n, Gen& gen)
{
    std::vector<int> a(static_cast<std::size_t>(n) * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = e == Ensemble::symmetric ? i : 0; j < n; ++j) {
            const int s = random_sign(gen);
            a[i * n + j] = s;
            if (e == Ensemble::symmetric) a[j * n + i] = s;
        }
    return a;
}

namespace detail {

// Fraction-free Gaussian elimination. Every intermediate entry is a minor of
// the input, so the Hadamard bound k^{k/2} caps its size.
template <class Int>
bool bareiss_singular(const std::vector<int>& a, unsigned n)
{
    std::vector<Int> m(a.begin(), a.end());
    Int prev = 1;
    for (unsigned k = 0; k < n; ++k) {
        unsigned p = k;
        while (p < n && m[p * n + k] == 0) ++p;
        if (p == n) return true;
        if (p != k)
            for (unsigned j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
        for (unsigned i = k + 1; i < n; ++i) {
            for (unsigned j = k + 1; j < n; ++j) m[i * n + j] = (m[k * n + k] * m[i * n + j] - m[i * n + k] * m[k * n + j]) / prev;
            m[i * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    return false;
}

} // namespace detail

// Exact singularity test for an integer matrix with entries in {-1, 0, 1}.
inline bool is_singular(const std::vector<int>& a, unsigned n)
{
    detail::require(a.size() == static_cast<std::size_t>(n) * n, "matrix shape");
    if (n == 0) return false;
    // Products of two minors must fit: n^{n/2} < 2^62.
    if (0.5 * n * std::log2(std::max(1.0, static_cast<double>(n))) < 62.0) return detail::bareiss_singular<i128>(a, n);
    return detail::bareiss_singular<boost::multiprecision::cpp_int>(a, n);
}

struct SingularityResult {
    Ensemble ensemble = Ensemble::symmetric;
    unsigned n = 0;
    std::uint64_t trials = 0;
    std::uint64_t singular = 0;
    double p_hat = 0.0;
    double standard_error = 0.0;
    // Full enumeration, n <= 4.
    bool has_exact = false;
    std::uint64_t exact_singular = 0;
    std::uint64_t exact_total = 0;
    double exact = 0.0;
};

inline constexpr unsigned max_enumerated_matrix = 4;

// Counts singular matrices among all sign matrices of the ensemble.
inline std::pair<std::uint64_t, std::uint64_t> singularity_enumerate(Ensemble e, unsigned n)
{
    detail::require(n <= max_enumerated_matrix, "enumeration needs n <= 4");
    const unsigned free = e == Ensemble::symmetric ? n * (n + 1) / 2 : n * n;
    std::vector<int> a(static_cast<std::size_t>(n) * n);
    std::uint64_t singular = 0;
    const std::uint64_t total = std::uint64_t{1} << free;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        unsigned bit = 0;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = e == Ensemble::symmetric ? i : 0; j < n; ++j) {
                const int s = ((mask >> bit++) & 1) ? 1 : -1;
                a[i * n + j] = s;
                if (e == Ensemble::symmetric) a[j * n + i] = s;
            }
        singular += is_singular(a, n);
    }
    return {singular, total};
}

inline SingularityResult singularity_mc(Ensemble e, unsigned n, std::uint64_t trials, std::uint64_t seed)
{
    detail::require(n >= 1, "n must be positive");
    SingularityResult r;
    r.ensemble = e;
    r.n = n;
    r.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng gen(derive_seed(seed, t));
        r.singular += is_singular(sample_sign_matrix(e, n, gen), n);
    }
    if (trials) {
        r.p_hat = static_cast<double>(r.singular) / static_cast<double>(trials);
        r.standard_error = std::sqrt(r.p_hat * (1.0 - r.p_hat) / static_cast<double>(trials));
    }
    if (n <= max_enumerated_matrix) {
        std::tie(r.exact_singular, r.exact_total) = singularity_enumerate(e, n);
        r.has_exact = true;
        r.exact = static_cast<double>(r.exact_singular) / static_cast<double>(r.exact_total);
    }
    return r;
}

inline double least_singular_value(Ensemble e, const std::vector<int>& a, unsigned n)
{
    Eigen::MatrixXd m(n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m(i, j) = a[i * n + j];
    if (e == Ensemble::symmetric) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().minCoeff();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().minCoeff();
}

struct SpectrumResult {
    Ensemble ensemble = Ensemble::symmetric;
    unsigned n = 0;
    std::uint64_t trials = 0;
    std::vector<double> sigma_min;  // per trial
    std::vector<double> eps_grid;
    std::vector<double> cdf;        // P(sigma_min sqrt(n) <= eps)
    std::vector<double> f_eps;      // P(|A v|_2 <= eps sqrt(n)) for the fixed v
    std::vector<double> v;
};

inline constexpr unsigned max_spectrum_n = 200;

// v empty: one uniform point of the sphere, drawn from the seed.
inline SpectrumResult spectrum_mc(Ensemble e, unsigned n, std::uint64_t trials, std::vector<double> eps_grid,
                                  std::uint64_t seed, std::vector<double> v = {})
{
    detail::require(n >= 1 && n <= max_spectrum_n, "spectrum needs 1 <= n <= 200");
    for (double x : eps_grid) detail::require(std::isfinite(x) && x >= 0, "eps grid must be finite and non-negative");
    if (v.empty()) {
        Rng gen(derive_seed(seed, 0xffff'ffffULL));
        double s = 0.0;
        v.resize(n);
        do {
            s = 0.0;
            for (double& x : v) {
                x = standard_normal(gen);
                s += x * x;
            }
        } while (s == 0.0);
        for (double& x : v) x /= std::sqrt(s);
    }
    detail::require(v.size() == n, "v has the wrong length");
    SpectrumResult r;
    r.ensemble = e;
    r.n = n;
    r.trials = trials;
    r.eps_grid = std::move(eps_grid);
    r.v = std::move(v);
    std::vector<double> av_sq(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng gen(derive_seed(seed, t));
        const auto a = sample_sign_matrix(e, n, gen);
        r.sigma_min.push_back(least_singular_value(e, a, n));
        double s = 0.0;
        for (unsigned i = 0; i < n; ++i) {
            double row = 0.0;
            for (unsigned j = 0; j < n; ++j) row += a[i * n + j] * r.v[j];
            s += row * row;
        }
        av_sq[t] = s;
    }
    const double rn = std::sqrt(static_cast<double>(n)), tt = std::max<double>(1.0, static_cast<double>(trials));
    for (double eps : r.eps_grid) {
        std::uint64_t below = 0, small = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            below += r.sigma_min[t] * rn <= eps;
            small += av_sq[t] <= eps * eps * n;
        }
        r.cdf.push_back(static_cast<double>(below) / tt);
        r.f_eps.push_back(static_cast<double>(small) / tt);
    }
    return r;
}

// Least-squares slope of cdf against eps over the grid points in [lo, hi].
inline double cdf_slope(const std::vector<double>& eps, const std::vector<double>& cdf, double lo, double hi)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
    for (std::size_t i = 0; i < eps.size(); ++i)
        if (eps[i] >= lo && eps[i] <= hi) {
            sx += eps[i];
            sy += cdf[i];
            sxx += eps[i] * eps[i];
            sxy += eps[i] * cdf[i];
            ++m;
        }
    detail::require(m >= 2, "slope needs two grid points in range");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace pcomb

#endif // PCOMB_LWO_MATRICES_HPP
