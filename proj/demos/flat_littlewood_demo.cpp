// Builds a flat Littlewood polynomial of degree 4n and prints its extremes on
// the unit circle next to a Rudin-Shapiro polynomial of similar length.
//   demo_flat_littlewood [n] [seed] [coefficients.txt]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "pcomb/littlewood.hpp"

int main(int argc, char** argv)
{
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 512;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 7;
    const double gamma = 1.0 / 32;

    try {
        const auto r = pcomb::assemble_flat_littlewood(n, gamma, gamma / 4, seed);
        std::printf("degree %zu, %zu attempt(s), %zu bad intervals\n", r.poly.degree(), r.attempts,
                    r.intervals.intervals.size());
        std::printf("min |P| = %8.3f  (%.4f sqrt(4n))\n", r.flatness.min_abs, r.min_normalized);
        std::printf("max |P| = %8.3f  (%.4f sqrt(4n))\n", r.flatness.max_abs, r.max_normalized);

        unsigned t = 0;
        while ((std::size_t{2} << t) <= 4 * n + 1) ++t;
        const auto rs = pcomb::rudin_shapiro(t);
        const auto vals = pcomb::evaluate_on_circle(rs.p, 64 * rs.p.size());
        double lo = 1e300, hi = 0;
        for (const auto& z : vals) {
            lo = std::min(lo, std::abs(z));
            hi = std::max(hi, std::abs(z));
        }
        std::printf("Rudin-Shapiro, %zu terms: min %.3f, max %.3f (%.4f sqrt(len))\n", rs.p.size(), lo, hi,
                    hi / std::sqrt(double(rs.p.size())));

        if (argc > 3) {
            std::ofstream out(argv[3]);
            pcomb::write_coefficients(out, r.poly.coefficients());
            std::printf("coefficients written to %s\n", argv[3]);
        }
    } catch (const pcomb::pipeline_failure& e) {
        std::fprintf(stderr, "pipeline failed at %s: %s\n", e.stage().c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
}
