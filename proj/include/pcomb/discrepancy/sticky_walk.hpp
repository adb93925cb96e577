#ifndef PCOMB_DISCREPANCY_STICKY_WALK_HPP
#define PCOMB_DISCREPANCY_STICKY_WALK_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "../core/error.hpp"
#include "../core/random.hpp"

namespace pcomb {

struct WalkOptions {
    double step_size = 0.0;      // 0 selects 1/(8 sqrt(n_free))
    double stick_tol = 0.0;      // 0 selects step_size/4
    double max_time = 1.0;       // in units of step_size^2 per unclipped step
    double freeze_target = 1.0;  // stop once this fraction of initially free coordinates froze
    std::size_t rebuild_every = 256;
};

struct WalkOutcome {
    Eigen::VectorXd x;
    std::vector<char> frozen;  // per coordinate
    std::vector<char> stuck;   // per constraint row
    std::size_t newly_frozen = 0;
    std::size_t steps = 0;
    std::size_t clipped_steps = 0;
    double time = 0.0;
    bool exhausted = false;  // no free direction left
};

namespace detail {

// Orthonormal basis (columns of q) of the stuck rows restricted to the free
// coordinates. Frozen coordinates are kept as zero rows.
class StuckBasis {
public:
    explicit StuckBasis(Eigen::Index n) : q_(n, 0) {}

    Eigen::Index rank() const { return q_.cols(); }

    void project_out(Eigen::VectorXd& z) const
    {
        if (q_.cols() == 0) return;
        Eigen::VectorXd c = q_.transpose() * z;
        z.noalias() -= q_ * c;
    }

    // Adds w (already zero on frozen coordinates). Returns false if w is
    // (numerically) in the current span.
    bool add(Eigen::VectorXd w)
    {
        const double norm0 = w.norm();
        if (norm0 == 0.0) return false;
        project_out(w);
        project_out(w);
        const double r = w.norm();
        if (r <= 1e-9 * norm0) return false;
        q_.conservativeResize(Eigen::NoChange, q_.cols() + 1);
        q_.col(q_.cols() - 1) = w / r;
        return true;
    }

    // Restricts the spanned space to coordinates other than i.
    void drop_coordinate(Eigen::Index i)
    {
        if (q_.cols() == 0) return;
        Eigen::VectorXd u = q_.row(i).transpose();
        q_.row(i).setZero();
        const double un = u.norm();
        if (un <= 1e-14) return;
        // Householder reflector H with H u = -sign(u0)|u| e_0; after Q <- Q H
        // every column but the first stays orthonormal, the first shrinks to
        // norm sqrt(1 - |u|^2).
        Eigen::VectorXd h = u;
        h[0] += (u[0] >= 0 ? un : -un);
        const double hn2 = h.squaredNorm();
        if (hn2 > 0) {
            Eigen::VectorXd qh = q_ * h;
            q_.noalias() -= (2.0 / hn2) * qh * h.transpose();
        }
        const double c0 = q_.col(0).norm();
        if (c0 > 1e-7) {
            q_.col(0) /= c0;
        } else {
            remove_first_column();
        }
    }

    void reset(Eigen::Index n) { q_.resize(n, 0); }

private:
    void remove_first_column()
    {
        const Eigen::Index k = q_.cols();
        if (k > 1) q_.leftCols(k - 1) = q_.rightCols(k - 1).eval();
        q_.conservativeResize(Eigen::NoChange, k - 1);
    }

    Eigen::MatrixXd q_;
};

} // namespace detail

// Gaussian walk from x0 inside {x in [-1,1]^n : |<x - x0, a_j>| <= budgets[j]}.
// Each step is a Gaussian of scale step_size projected onto the directions
// orthogonal to all frozen coordinates and stuck rows, then clipped at the
// first boundary it would cross. Budgets are absolute.
template <class Gen>
WalkOutcome sticky_walk(const Eigen::MatrixXd& a, const Eigen::VectorXd& budgets, const Eigen::VectorXd& x0,
                        Gen& gen, WalkOptions opt = {})
{
    const Eigen::Index n = x0.size();
    const Eigen::Index m = a.rows();
    detail::require(a.cols() == n || m == 0, "row length must match x0");
    detail::require(budgets.size() == m, "one budget per row");
    detail::require(opt.max_time > 0, "max_time must be positive");

    WalkOutcome out;
    out.x = x0;
    out.frozen.assign(static_cast<std::size_t>(n), 0);
    out.stuck.assign(static_cast<std::size_t>(m), 0);

    Eigen::Index free_count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(out.x[i]) >= 1.0 - 1e-12) {
            out.x[i] = out.x[i] > 0 ? 1.0 : -1.0;
            out.frozen[static_cast<std::size_t>(i)] = 1;
        } else {
            ++free_count;
        }
    }
    const Eigen::Index initially_free = free_count;
    if (free_count == 0) {
        out.exhausted = true;
        return out;
    }

    const double h = opt.step_size > 0 ? opt.step_size : 1.0 / (8.0 * std::sqrt(static_cast<double>(free_count)));
    const double tol = opt.stick_tol > 0 ? opt.stick_tol : h / 4.0;
    const auto target_frozen = static_cast<Eigen::Index>(std::ceil(opt.freeze_target * static_cast<double>(initially_free) - 1e-9));

    Eigen::VectorXd row_norm = m ? Eigen::VectorXd(a.rowwise().norm()) : Eigen::VectorXd();
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);  // a (x - x0)
    detail::StuckBasis basis(n);
    std::size_t events_since_rebuild = 0;

    auto restricted_row = [&](Eigen::Index j) {
        Eigen::VectorXd w = a.row(j).transpose();
        for (Eigen::Index i = 0; i < n; ++i)
            if (out.frozen[static_cast<std::size_t>(i)]) w[i] = 0.0;
        return w;
    };
    auto rebuild = [&] {
        basis.reset(n);
        for (Eigen::Index j = 0; j < m; ++j)
            if (out.stuck[static_cast<std::size_t>(j)]) basis.add(restricted_row(j));
        events_since_rebuild = 0;
    };

    // Rows with zero budget are stuck from the start.
    for (Eigen::Index j = 0; j < m; ++j) {
        if (budgets[j] <= tol * row_norm[j]) {
            out.stuck[static_cast<std::size_t>(j)] = 1;
            basis.add(restricted_row(j));
        }
    }

    Eigen::VectorXd g(n), dv(m);
    double elapsed = 0.0;
    const double dt = h * h;

    while (elapsed < opt.max_time) {
        if (free_count - basis.rank() <= 0) {
            out.exhausted = true;
            break;
        }
        if (initially_free - free_count >= target_frozen && opt.freeze_target < 1.0) break;

        for (Eigen::Index i = 0; i < n; ++i)
            g[i] = out.frozen[static_cast<std::size_t>(i)] ? 0.0 : h * standard_normal(gen);
        basis.project_out(g);
        for (Eigen::Index i = 0; i < n; ++i)
            if (out.frozen[static_cast<std::size_t>(i)]) g[i] = 0.0;
        if (m) dv.noalias() = a * g;

        double tau = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (out.frozen[static_cast<std::size_t>(i)] || g[i] == 0.0) continue;
            const double room = g[i] > 0 ? (1.0 - out.x[i]) / g[i] : (-1.0 - out.x[i]) / g[i];
            tau = std::min(tau, std::max(room, 0.0));
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            if (out.stuck[static_cast<std::size_t>(j)] || dv[j] == 0.0) continue;
            const double room = dv[j] > 0 ? (budgets[j] - v[j]) / dv[j] : (-budgets[j] - v[j]) / dv[j];
            tau = std::min(tau, std::max(room, 0.0));
        }

        out.x.noalias() += tau * g;
        if (m) v.noalias() += tau * dv;
        ++out.steps;
        if (tau < 1.0) {
            ++out.clipped_steps;
        } else {
            elapsed += dt;
        }

        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (out.frozen[static_cast<std::size_t>(i)]) continue;
            if (std::abs(out.x[i]) >= 1.0 - tol) {
                const double face = out.x[i] > 0 ? 1.0 : -1.0;
                const double delta = face - out.x[i];
                // Snapping moves a(x - x0); only snap when every row stays
                // within budget, otherwise clipping reaches the face later.
                bool fits = true;
                for (Eigen::Index j = 0; j < m && fits; ++j)
                    fits = std::abs(v[j] + a(j, i) * delta) <= budgets[j] + 1e-9 * std::max(1.0, budgets[j]);
                if (!fits) continue;
                if (m) v.noalias() += delta * a.col(i);
                out.x[i] = face;
                out.frozen[static_cast<std::size_t>(i)] = 1;
                --free_count;
                ++out.newly_frozen;
                basis.drop_coordinate(i);
                changed = true;
            }
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            if (out.stuck[static_cast<std::size_t>(j)]) continue;
            if (std::abs(v[j]) >= budgets[j] - tol * row_norm[j]) {
                out.stuck[static_cast<std::size_t>(j)] = 1;
                basis.add(restricted_row(j));
                changed = true;
            }
        }
        if (changed && ++events_since_rebuild >= opt.rebuild_every) rebuild();
    }
    out.time = elapsed;
    return out;
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_STICKY_WALK_HPP
