#ifndef PCOMB_LITTLEWOOD_COSINE_PART_HPP
#define PCOMB_LITTLEWOOD_COSINE_PART_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "../core/error.hpp"
#include "evaluate.hpp"
#include "rudin_shapiro.hpp"

namespace pcomb {

// c(x) = Re(z^T P_t(z) + z^{2T} Q_t(z)) with z = e^{ix}, t = floor(log2(gamma n)),
// T = 2^t. Frequencies C = [T, 3T-1]: eps_{T+j} = p_j, eps_{2T+j} = q_j.
struct CosinePart {
    std::size_t n = 0;
    double gamma = 0.0;
    unsigned t = 0;
    std::size_t T = 0;
    RudinShapiroPair rs;

    std::vector<std::size_t> frequencies() const
    {
        std::vector<std::size_t> c(2 * T);
        for (std::size_t j = 0; j < 2 * T; ++j) c[j] = T + j;
        return c;
    }

    // eps_k for k in frequencies(), same order.
    std::vector<int> signs() const
    {
        std::vector<int> s(rs.p);
        s.insert(s.end(), rs.q.begin(), rs.q.end());
        return s;
    }

    int sign(std::size_t k) const { return k < 2 * T ? rs.p[k - T] : rs.q[k - 2 * T]; }

    double operator()(double x) const
    {
        const std::complex<double> z = std::polar(1.0, x);
        std::complex<double> p = 0.0, q = 0.0;
        for (std::size_t k = T; k-- > 0;) {
            p = p * z + static_cast<double>(rs.p[k]);
            q = q * z + static_cast<double>(rs.q[k]);
        }
        const std::complex<double> zt = std::polar(1.0, static_cast<double>(T) * x);
        return std::real(zt * (p + zt * q));
    }

    // sup |c| <= |P| + |Q| <= sqrt(2 (|P|^2 + |Q|^2)) = 2^{(t+2)/2}.
    double sup_bound() const { return std::pow(2.0, (static_cast<double>(t) + 2.0) / 2.0); }
};

inline CosinePart build_cosine_part(std::size_t n, double gamma)
{
    detail::require(gamma > 0.0 && gamma <= 0.125, "gamma must lie in (0, 1/8]");
    const double gn = gamma * static_cast<double>(n);
    detail::require(gn >= 8.0, "build_cosine_part needs gamma n >= 8");
    CosinePart c;
    c.n = n;
    c.gamma = gamma;
    c.t = static_cast<unsigned>(std::floor(std::log2(gn) + 1e-12));
    c.T = std::size_t{1} << c.t;
    c.rs = rudin_shapiro(c.t);
    return c;
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_COSINE_PART_HPP
