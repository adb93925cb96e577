#ifndef PCOMB_DISCREPANCY_PARTIAL_COLORING_ORACLE_HPP
#define PCOMB_DISCREPANCY_PARTIAL_COLORING_ORACLE_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <vector>

#include "types.hpp"

namespace pcomb {

namespace detail {

// Exhaustive search over {-1,0,1}^n with running row sums, pruned when a row
// can no longer come back within the bound.
class TernarySearch {
public:
    TernarySearch(const Eigen::MatrixXd& a, double bound, std::size_t min_nonzero)
        : a_(a), bound_(bound), need_(min_nonzero), n_(static_cast<std::size_t>(a.cols())), m_(static_cast<std::size_t>(a.rows()))
    {
        // tail_[i][j] = sum_{k >= i} |a_jk|
        tail_.assign(n_ + 1, std::vector<double>(m_, 0.0));
        for (std::size_t i = n_; i-- > 0;)
            for (std::size_t j = 0; j < m_; ++j) tail_[i][j] = tail_[i + 1][j] + std::abs(a_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
        sums_.assign(m_, 0.0);
        x_.assign(n_, 0);
    }

    std::optional<std::vector<int>> run()
    {
        if (dfs(0, 0)) return x_;
        return std::nullopt;
    }

private:
    bool dfs(std::size_t i, std::size_t nonzero)
    {
        if (nonzero + (n_ - i) < need_) return false;
        for (std::size_t j = 0; j < m_; ++j)
            if (std::abs(sums_[j]) - tail_[i][j] > bound_ + slack()) return false;
        if (i == n_) {
            for (std::size_t j = 0; j < m_; ++j)
                if (std::abs(sums_[j]) > bound_ + slack()) return false;
            return true;
        }
        for (int s : {1, -1, 0}) {
            x_[i] = s;
            if (s) add(i, s);
            const bool ok = dfs(i + 1, nonzero + (s != 0));
            if (s) add(i, -s);
            if (ok) return true;
        }
        x_[i] = 0;
        return false;
    }

    void add(std::size_t i, int s)
    {
        for (std::size_t j = 0; j < m_; ++j) sums_[j] += s * a_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
    }

    double slack() const { return 1e-9 * (1.0 + bound_); }

    const Eigen::MatrixXd& a_;
    double bound_;
    std::size_t need_, n_, m_;
    std::vector<std::vector<double>> tail_;
    std::vector<double> sums_;
    std::vector<int> x_;
};

} // namespace detail

// Finds x in {-1,0,1}^n with at least n/4 nonzero entries and ||Ax||_inf <=
// bound, or reports that none exists.
//
// Fast path: bucket the 2^n vectors y in {0,1}^n by floor(Ay / bound) per
// coordinate. Two vectors in the same bucket differ by less than `bound` in
// every row, so x = y - y' qualifies once y, y' differ in >= n/4 places.
// When no bucket yields such a pair, an exact pruned search over {-1,0,1}^n
// decides, so "none" is only returned when no x exists at all.
inline std::optional<PartialColoring> exhaustive_partial_coloring_oracle(const ConstraintSystem& sys, double bound)
{
    sys.validate();
    const std::size_t n = sys.dim();
    if (n > 20) throw size_limit_error("exhaustive_partial_coloring_oracle supports n <= 20");
    detail::require(bound >= 0 && std::isfinite(bound), "bound must be finite and non-negative");
    const std::size_t need = (n + 3) / 4;
    const auto& a = sys.rows;
    const auto m = a.rows();

    auto to_coloring = [&](const std::vector<int>& x) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = x[i];
        return PartialColoring(v);
    };

    std::map<std::vector<std::int64_t>, std::vector<std::uint32_t>> buckets;
    const std::uint32_t total = 1u << n;
    Eigen::VectorXd ay(m);
    for (std::uint32_t y = 0; y < total; ++y) {
        ay.setZero();
        for (std::size_t i = 0; i < n; ++i)
            if (y >> i & 1u) ay += a.col(static_cast<Eigen::Index>(i));
        std::vector<std::int64_t> key(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < m; ++j) {
            if (bound > 0) {
                key[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(std::floor(ay[j] / bound));
            } else {
                double v = ay[j] + 0.0;
                std::int64_t bits;
                std::memcpy(&bits, &v, sizeof bits);
                key[static_cast<std::size_t>(j)] = bits;
            }
        }
        auto& cell = buckets[key];
        for (std::uint32_t other : cell) {
            if (static_cast<std::size_t>(std::popcount(y ^ other)) >= need) {
                std::vector<int> x(n);
                for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<int>(y >> i & 1u) - static_cast<int>(other >> i & 1u);
                return to_coloring(x);
            }
        }
        cell.push_back(y);
    }

    detail::TernarySearch search(a, bound, need);
    if (auto x = search.run()) return to_coloring(*x);
    return std::nullopt;
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_PARTIAL_COLORING_ORACLE_HPP
