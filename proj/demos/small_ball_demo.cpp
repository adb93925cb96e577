// Concentration of random signed sums: the all-ones vector sits on the
// central binomial coefficient, generic weights spread out, and the least
// common denominator tells the two apart.

#include <cstdio>
#include <vector>

#include "pcomb/lwo.hpp"

int main()
{
    const unsigned n = 16;
    pcomb::Rng gen(5);
    std::vector<double> ones(n, 1.0), generic(n), arithmetic(n);
    for (unsigned i = 0; i < n; ++i) {
        generic[i] = pcomb::standard_normal(gen);
        arithmetic[i] = 1.0 + i;
    }

    std::printf("%-12s %14s %14s %12s\n", "weights", "rho_0 (max b)", "rho_0.5", "LCD_0.01");
    for (const auto& [name, w] : {std::pair{"ones", ones}, std::pair{"1..16", arithmetic}, std::pair{"gaussian", generic}}) {
        const auto u = pcomb::WeightVector::unit(w);
        const auto atom = pcomb::rho_small_ball(pcomb::WeightVector::raw(w), 0.0, std::nullopt);
        const auto ball = pcomb::rho_small_ball(u, 0.5, std::nullopt);
        const auto d = pcomb::lcd(u, 0.01, 200.0, 0.01);
        std::printf("%-12s %8llu/65536 %14.5f ", name, static_cast<unsigned long long>(atom.numerator), ball.value);
        if (d.found)
            std::printf("%12.3f\n", d.value);
        else
            std::printf("%12s\n", "> 200");
    }
    std::printf("binom(16, 8) / 2^16 = %.5f\n", double(pcomb::central_binomial(n)) / 65536.0);

    const auto s = pcomb::singularity_mc(pcomb::Ensemble::iid, 4, 20000, 1);
    std::printf("4 x 4 sign matrices: %llu/%llu singular exactly, %.4f +- %.4f sampled\n",
                static_cast<unsigned long long>(s.exact_singular), static_cast<unsigned long long>(s.exact_total), s.p_hat,
                s.standard_error);
}
