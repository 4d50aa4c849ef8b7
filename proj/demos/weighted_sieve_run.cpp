// One full weighted run for f = x^2 + x + 1 over primes in (x, 2x]: the
// weighted sum, the survivor classification, and the factor-count histogram.
#include <cstdio>

#include "polysieve/int128.hpp"
#include "polysieve/local_density.hpp"
#include "polysieve/weighted_sieve.hpp"

using namespace polysieve;

int main() {
    IntPolynomial f({1, 1, 1});
    const uint64_t x = 100000;
    const int r = 4;
    const double alpha = 1.0 / 24.0;   // z = N^alpha
    const double beta = 0.6131 / 2.0;  // y = N^beta, optimized level over k

    auto adm = is_admissible(f);
    std::printf("f = %s, admissible: %s\n", f.to_string().c_str(),
                adm.admissible ? "yes" : "no");

    auto A = build_sequence(f, x);
    std::printf("x = %llu, X = |A| = %llu, N = %s\n",
                static_cast<unsigned long long>(x),
                static_cast<unsigned long long>(A.X()),
                to_string(A.N).c_str());

    auto an = analyze_weights(A, r, alpha, beta);
    const auto& rep = an.report;
    std::printf("r = %d  alpha = %.4f  beta = %.4f  eta = %.4f\n", rep.r,
                rep.alpha, rep.beta, rep.eta);
    std::printf("z = %.2f  y = %.2f\n", rep.z, rep.y);
    std::printf("W = %.6f over %llu survivors (%llu positive, %llu with a "
                "square in [z, y))\n",
                rep.W, static_cast<unsigned long long>(rep.survivors),
                static_cast<unsigned long long>(rep.positive_weight),
                static_cast<unsigned long long>(rep.square_hit));
    std::printf("violations of the P_%d deduction: %llu\n", r,
                static_cast<unsigned long long>(rep.Pr_violations));

    std::printf("\nOmega histogram over A\n");
    for (const auto& [omega, count] : an.histogram) {
        std::printf("%3d %8llu\n", omega,
                    static_cast<unsigned long long>(count));
    }

    auto st = omega_statistics(A);
    std::printf("\n#{Omega <= %d} = %llu, normalized by x/log^2 x: %.4f\n",
                st.r, static_cast<unsigned long long>(st.count_le_r),
                st.normalized_count);
    return 0;
}
