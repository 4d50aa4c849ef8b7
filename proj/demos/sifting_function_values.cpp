// Prints the sifting functions on coarse grids plus the junction report,
// roughly what you want pinned to a wall while reading the derivations.
#include <cmath>
#include <cstdio>

#include "polysieve/sifting_functions.hpp"

using namespace polysieve;

int main() {
    SieveFunctionEvaluator ev;

    std::printf("dimension 1 (alpha1 = beta1 = 2)\n");
    std::printf("%6s %12s %12s\n", "s", "f1", "F1");
    for (double s = 2.0; s <= 6.0 + 1e-9; s += 0.5) {
        if (s <= 5.0) {
            std::printf("%6.2f %12.8f %12.8f\n", s, ev.f1(s), ev.F1(s));
        } else {
            std::printf("%6.2f %12.8f %12s\n", s, ev.f1(s), "-");
        }
    }

    const auto& cs = ev.constants();
    std::printf("\ndimension 2 (alpha2 = %.4f, beta2 = %.4f)\n", cs.alpha2,
                cs.beta2);
    std::printf("%6s %12s %12s\n", "s", "f2", "F2");
    for (double s = 2.0; s <= 6.5 + 1e-9; s += 0.5) {
        if (s <= 6.0) {
            std::printf("%6.2f %12.8f %12.8f\n", s, ev.f2(s), ev.F2(s));
        } else {
            std::printf("%6.2f %12s %12.8f\n", s, "-", ev.F2(s));
        }
    }

    std::printf("\njunctions (left piece vs right piece)\n");
    for (const auto& j : ev.junction_report()) {
        std::printf("%-14s %.12f  %.12f  gap %.1e\n", j.name, j.left, j.right,
                    std::fabs(j.left - j.right));
    }

    std::printf("\ndelay relation residuals at h = 1e-4\n");
    std::printf("F1(4.0): %.2e   f1(3.5): %.2e   f2(5.0): %.2e   F2(6.0): %.2e\n",
                ev.dde_residual(SieveFn::F1, 4.0, 1e-4),
                ev.dde_residual(SieveFn::f1, 3.5, 1e-4),
                ev.dde_residual(SieveFn::f2, 5.0, 1e-4),
                ev.dde_residual(SieveFn::F2, 6.0, 1e-4));
    return 0;
}
