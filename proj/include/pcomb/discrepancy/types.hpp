#ifndef PCOMB_DISCREPANCY_TYPES_HPP
#define PCOMB_DISCREPANCY_TYPES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "../core/error.hpp"

namespace pcomb {

// Rows of `rows` are the linear functionals a^(j); budgets[j] is c_j in units
// of sqrt(n).
struct ConstraintSystem {
    Eigen::MatrixXd rows;
    std::vector<double> budgets;
    bool spencer_normalized = false;

    ConstraintSystem() = default;
    ConstraintSystem(Eigen::MatrixXd a, std::vector<double> c, bool normalized = false)
        : rows(std::move(a)), budgets(std::move(c)), spencer_normalized(normalized)
    {
        validate();
    }

    static ConstraintSystem uniform(Eigen::MatrixXd a, double c, bool normalized = false)
    {
        const auto m = static_cast<std::size_t>(a.rows());
        return ConstraintSystem(std::move(a), std::vector<double>(m, c), normalized);
    }

    std::size_t dim() const { return static_cast<std::size_t>(rows.cols()); }
    std::size_t size() const { return static_cast<std::size_t>(rows.rows()); }

    void validate() const
    {
        detail::require(rows.cols() >= 1, "constraint system needs n >= 1");
        detail::require(budgets.size() == static_cast<std::size_t>(rows.rows()),
                        "budgets length must equal the number of rows");
        for (double c : budgets)
            detail::require(std::isfinite(c) && c >= 0.0, "budgets must be finite and non-negative");
        detail::require(rows.allFinite(), "rows must be finite");
        if (spencer_normalized)
            detail::require(rows.size() == 0 || rows.cwiseAbs().maxCoeff() <= 1.0,
                            "Spencer-normalized rows need entries in [-1,1]");
    }
};

inline constexpr double frozen_tolerance = 1e-12;

// A point of [-1,1]^n. Coordinates within frozen_tolerance of +-1 are frozen.
struct PartialColoring {
    Eigen::VectorXd values;

    PartialColoring() = default;
    explicit PartialColoring(Eigen::VectorXd v) : values(std::move(v))
    {
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            detail::require(std::isfinite(values[i]) && std::abs(values[i]) <= 1.0 + frozen_tolerance,
                            "partial coloring entries must lie in [-1,1]");
            if (std::abs(values[i]) >= 1.0 - frozen_tolerance) values[i] = values[i] > 0 ? 1.0 : -1.0;
        }
    }

    static PartialColoring zeros(std::size_t n) { return PartialColoring(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))); }

    std::size_t size() const { return static_cast<std::size_t>(values.size()); }
    bool is_frozen(std::size_t i) const { return std::abs(values[static_cast<Eigen::Index>(i)]) >= 1.0 - frozen_tolerance; }

    std::vector<std::size_t> frozen() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (is_frozen(i)) out.push_back(i);
        return out;
    }

    std::size_t frozen_count() const
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < size(); ++i) c += is_frozen(i);
        return c;
    }
};

using SignedColoring = std::vector<int>;

inline void check_signs(const SignedColoring& s)
{
    for (int v : s) detail::require(v == 1 || v == -1, "signed coloring entries must be +-1");
}

inline Eigen::VectorXd to_vector(const SignedColoring& s)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) v[static_cast<Eigen::Index>(i)] = s[i];
    return v;
}

// sign(x_i) with 0 -> +1.
inline SignedColoring round_signs(const Eigen::VectorXd& x)
{
    SignedColoring s(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) s[static_cast<std::size_t>(i)] = x[i] < 0 ? -1 : 1;
    return s;
}

inline double inf_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& x)
{
    if (a.rows() == 0) return 0.0;
    return (a * x).cwiseAbs().maxCoeff();
}

// Vertices are 0-based internally; text I/O is 1-based.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t n, std::vector<std::vector<std::size_t>> edges) : n_(n), edges_(std::move(edges))
    {
        detail::require(n_ >= 1 || edges_.empty(), "hypergraph with edges needs n >= 1");
        std::vector<std::size_t> deg(n_, 0);
        for (auto& e : edges_) {
            std::sort(e.begin(), e.end());
            detail::require(std::adjacent_find(e.begin(), e.end()) == e.end(), "edge lists a vertex twice");
            for (std::size_t v : e) {
                detail::require(v < n_, "edge vertex out of range");
                ++deg[v];
            }
        }
        max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }

    std::size_t vertex_count() const { return n_; }
    const std::vector<std::vector<std::size_t>>& edges() const { return edges_; }
    std::size_t max_degree() const { return max_degree_; }

    long edge_sum(std::size_t e, const SignedColoring& f) const
    {
        long s = 0;
        for (std::size_t v : edges_[e]) s += f[v];
        return s;
    }

    long discrepancy(const SignedColoring& f) const
    {
        detail::require(f.size() == n_, "coloring length must equal vertex count");
        long worst = 0;
        for (std::size_t e = 0; e < edges_.size(); ++e) worst = std::max(worst, std::labs(edge_sum(e, f)));
        return worst;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::vector<std::size_t>> edges_;
    std::size_t max_degree_ = 0;
};

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_TYPES_HPP
