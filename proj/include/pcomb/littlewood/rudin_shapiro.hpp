#ifndef PCOMB_LITTLEWOOD_RUDIN_SHAPIRO_HPP
#define PCOMB_LITTLEWOOD_RUDIN_SHAPIRO_HPP

#include <cstddef>
#include <vector>

#include "../core/error.hpp"

namespace pcomb {

struct RudinShapiroPair {
    std::vector<int> p;
    std::vector<int> q;
    unsigned level = 0;
};

// P_{t+1} = P_t + z^{2^t} Q_t,  Q_{t+1} = P_t - z^{2^t} Q_t,  P_0 = Q_0 = 1.
inline RudinShapiroPair rudin_shapiro(unsigned t)
{
    if (t > 24) throw size_limit_error("rudin_shapiro supports t <= 24");
    RudinShapiroPair r;
    r.level = t;
    r.p = {1};
    r.q = {1};
    for (unsigned s = 0; s < t; ++s) {
        std::vector<int> p2(r.p), q2(r.p);
        p2.insert(p2.end(), r.q.begin(), r.q.end());
        for (int c : r.q) q2.push_back(-c);
        r.p = std::move(p2);
        r.q = std::move(q2);
    }
    return r;
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_RUDIN_SHAPIRO_HPP
