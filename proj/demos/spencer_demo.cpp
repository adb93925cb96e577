// Colors a random n x n sign matrix with the iterated partial-coloring
// pipeline and compares it against uniformly random colorings.
//   demo_spencer [n] [seed]

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "pcomb/discrepancy.hpp"

int main(int argc, char** argv)
{
    const long n = argc > 1 ? std::atol(argv[1]) : 96;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    if (n < 1) {
        std::fprintf(stderr, "n must be positive\n");
        return 1;
    }

    const auto sys = pcomb::ConstraintSystem::uniform(pcomb::random_sign_matrix(n, n, seed), 1.0, true);
    const auto r = pcomb::spencer_coloring(sys, pcomb::derive_seed(seed, 1));
    const auto base = pcomb::random_coloring_baseline(sys, 201, pcomb::derive_seed(seed, 2));

    std::printf("round  active  frozen  max |<a_j, x - x0>|\n");
    for (const auto& rd : r.rounds)
        std::printf("%5zu  %6zu  %6zu  %10.3f\n", rd.round, rd.active, rd.frozen, rd.max_deviation);
    std::printf("\nn = %ld\n", n);
    std::printf("partial coloring  ||Ax||_inf = %g  (%.3f sqrt(n))\n", r.inf_norm, r.ratio);
    std::printf("random coloring   median %g, max %g over 201 draws\n", base.median_inf_norm, base.max_inf_norm);
    std::printf("sqrt(2 n ln 2n)   %.3f\n", std::sqrt(2.0 * n * std::log(2.0 * n)));
}
