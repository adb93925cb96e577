#ifndef PCOMB_DISCREPANCY_AP_DISCREPANCY_HPP
#define PCOMB_DISCREPANCY_AP_DISCREPANCY_HPP

#include <cstdlib>

#include "types.hpp"

namespace pcomb {

struct ApDiscrepancy {
    long prefix_max = 0;  // max over all segments {b, b+a, ..., b+ka}
    long full_max = 0;    // max over whole progressions b, b+a, ... up to n
    std::size_t step = 0;   // a of the prefix maximizer
    std::size_t start = 0;  // b of the prefix maximizer (1-based)
    std::size_t length = 0; // number of terms of the maximizing segment
};

// Positions are 1-based as in the usual statement: f(1), ..., f(n).
inline ApDiscrepancy ap_discrepancy_report(const SignedColoring& f)
{
    const std::size_t n = f.size();
    detail::require(n >= 1, "ap_discrepancy needs n >= 1");
    check_signs(f);
    ApDiscrepancy r;
    for (std::size_t a = 1; a <= n; ++a) {
        for (std::size_t b = 1; b <= n; ++b) {
            long s = 0;
            std::size_t len = 0;
            for (std::size_t p = b; p <= n; p += a) {
                s += f[p - 1];
                ++len;
                if (std::labs(s) > r.prefix_max) {
                    r.prefix_max = std::labs(s);
                    r.step = a;
                    r.start = b;
                    r.length = len;
                }
            }
            r.full_max = std::max(r.full_max, std::labs(s));
        }
    }
    return r;
}

inline long ap_discrepancy(const SignedColoring& f) { return ap_discrepancy_report(f).prefix_max; }

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_AP_DISCREPANCY_HPP
