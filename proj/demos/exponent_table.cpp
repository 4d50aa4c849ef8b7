// Reproduces the almost-prime exponent tables: the optimized (beta0, r)
// pairs for k = 2..10 and the logarithmic-growth row at beta0 = 1 - 1/k.
#include <cmath>
#include <cstdio>

#include "polysieve/exponent_bound.hpp"
#include "polysieve/sifting_functions.hpp"

using namespace polysieve;

int main() {
    SieveFunctionEvaluator ev;
    ExponentOptimizer opt(ev);
    const auto& C = opt.constants();

    std::printf("delta0* = %.6f   f1(6) = %.6f\n", C.delta0_star, C.f1_at_6);
    std::printf("M1 = %.6f  M2 = %.6f  M3 = %.6f  M4 = %.6f\n", C.M1, C.M2,
                C.M3, C.M4);
    std::printf("c1 = %.6f  c2 = %.6f  c = %.6f\n\n", C.c1, C.c2, C.c);

    std::printf("%3s %10s %10s %6s %12s\n", "k", "beta0", "r(k)", "r_int",
                "branch");
    auto report = opt.optimize(2, 10);
    for (const auto& row : report.rows) {
        std::printf("%3d %10.6f %10.6f %6d %12s\n", row.k, row.beta0,
                    row.r_real, row.r_int, to_string(row.branch).c_str());
    }

    std::printf("\nsimple level beta0 = 1 - 1/k: gap r - k - c log k\n");
    for (int k : {7, 10, 20, 50, 100, 200}) {
        double r = opt.asymptotic_r(k);
        std::printf("%4d  r = %10.4f  gap = %.4f\n", k, r,
                    r - k - C.c * std::log(k));
    }
    return 0;
}
