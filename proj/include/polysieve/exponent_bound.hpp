#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "polysieve/constants.hpp"
#include "polysieve/errors.hpp"
#include "polysieve/numerics.hpp"
#include "polysieve/sifting_functions.hpp"

// Almost-prime exponent for an irreducible degree-k polynomial at prime
// arguments. With sieve levels z = N^alpha0 < N^delta0 < y = N^beta0, the
// weighted sieve succeeds whenever r exceeds
//
//   r(k, beta0) = k/beta0 - 1
//     + (1/f1(1/(2 a))) [ Int_{a}^{d} (1/s - 1/beta0) F1((1/2 - s)/a) ds
//       + (e^{-gamma}/a) Int_{d}^{beta0} (1/s - 1/beta0) F2((1 - s)/a) ds ]
//
// with a = alpha0, d = delta0. delta0 is chosen to make the integrand switch
// between the two sieve dimensions where their costs cross, and beta0 is
// chosen stationary. At alpha0 = 1/12 the stationary beta0 satisfies
//
//   (12/e^gamma) Int_{delta0}^{beta0} F2(12 - 12 s) ds
//       = f1(6) k - Int_{1/12}^{delta0} F1(6 - 12 s) ds,
//
// which for beta0 > 5/6 collapses to the exact closed form
// beta0 = 1 - 1/(c1 k + c2), since there F2(12 - 12 s) = e^{2 gamma} /
// (18 (1-s)^2) integrates in elementary terms. The admissible integer
// exponent is floor(r) + 1, subject to beta0/k > 1/(r + 1).

namespace polysieve {

// One parameter set for the weighted sieve; validate() enforces the ordering
// and the exponent constraint the deduction needs.
struct SieveParameters {
    int k;          // polynomial degree
    double alpha0;  // z = N^alpha0, lower sifting level
    double delta0;  // dimension switch point
    double beta0;   // y = N^beta0, weight cutoff
    int r;          // claimed almost-prime exponent

    void validate() const {
        if (k < 1) throw InvalidParameters("degree k must be >= 1");
        if (!(0.0 < alpha0 && alpha0 < delta0 && delta0 < beta0 && beta0 < 1.0)) {
            throw InvalidParameters(
                "require 0 < alpha0 < delta0 < beta0 < 1");
        }
        if (!(delta0 < 0.5)) {
            throw InvalidParameters("require delta0 < 1/2");
        }
        if (!(beta0 / k > 1.0 / (r + 1.0))) {
            throw InvalidParameters(
                "exponent constraint beta0/k > 1/(r+1) violated");
        }
    }
};

enum class Beta0Branch { small_k, closed_form };

inline std::string to_string(Beta0Branch b) {
    return b == Beta0Branch::small_k ? "small-k" : "closed-form";
}

// Derived constants of the optimization at alpha0 = 1/12.
struct ExponentConstants {
    double delta0_star;  // stationary switch point
    double f1_at_6;
    double M1;  // 3 / (2 e^gamma)
    double M2;  // Int_{1/12}^{1/4} F1(6 - 12 s) ds
    double M3;  // Int_{1/4}^{delta0*} F1(6 - 12 s) ds, in closed form
    double M4;  // (12/e^gamma) Int_{delta0*}^{5/6} F2(12 - 12 s) ds
    double c1;  // M1 f1(6)
    double c2;  // 6 - M1 (M2 + M3 + M4)
    double c;   // 2 e^gamma / (3 f1(6)) = 1/c1, slope of r(k) - k in log k
};

struct Beta0Solution {
    double beta0;
    Beta0Branch branch;
};

struct PerDegreeResult {
    int k;
    double delta0;
    double beta0;
    Beta0Branch branch;
    double r_real;
    int r_int;
};

struct OptimizationReport {
    ExponentConstants constants;
    std::vector<PerDegreeResult> rows;
};

// Computes r(k, beta0) and its optimum over beta0. Holds a reference to the
// evaluator, which must outlive the optimizer. The derived constants are
// computed eagerly in the constructor.
class ExponentOptimizer {
public:
    explicit ExponentOptimizer(const SieveFunctionEvaluator& ev,
                               QuadratureSpec spec = {})
        : ev_(ev), spec_(spec) {
        const double eg = std::exp(euler_gamma);
        C_.f1_at_6 = ev_.f1(6.0);
        C_.M1 = 3.0 / (2.0 * eg);
        C_.delta0_star = solve_delta0();
        C_.M2 = integrate(
            [this](double s) { return ev_.F1(6.0 - 12.0 * s); }, 1.0 / 12.0,
            0.25, spec_);
        C_.M3 = -(eg / 6.0) * std::log(2.0 - 4.0 * C_.delta0_star);
        C_.M4 = (12.0 / eg) *
                piecewise([this](double s) { return ev_.F2(12.0 - 12.0 * s); },
                          C_.delta0_star, 5.0 / 6.0, f2_cuts());
        C_.c1 = C_.M1 * C_.f1_at_6;
        C_.c2 = 6.0 - C_.M1 * (C_.M2 + C_.M3 + C_.M4);
        C_.c = 2.0 * eg / (3.0 * C_.f1_at_6);
    }

    const ExponentConstants& constants() const { return C_; }
    const SieveFunctionEvaluator& evaluator() const { return ev_; }

    // The exponent functional itself. alpha0 >= 1/12 keeps both sifting
    // function arguments inside their computed ranges.
    double r_of(int k, double beta0, double delta0,
                double alpha0 = 1.0 / 12.0) const {
        if (k < 1) throw InvalidParameters("degree k must be >= 1");
        if (!(0.0 < alpha0 && alpha0 < delta0 && delta0 < beta0 &&
              beta0 < 1.0) ||
            !(delta0 < 0.5)) {
            throw InvalidParameters(
                "require 0 < alpha0 < delta0 < beta0 < 1 with delta0 < 1/2");
        }
        if (alpha0 < 1.0 / 12.0 - 1e-15) {
            throw DomainError(
                "alpha0 below 1/12 needs F1 beyond 5 and f1 beyond 6");
        }
        if (alpha0 >= 0.25) {
            throw DomainError("f1(1/(2 alpha0)) vanishes for alpha0 >= 1/4");
        }
        if ((1.0 - delta0) / alpha0 >= 7.0) {
            throw DomainError(
                "F2 argument (1 - delta0)/alpha0 must stay below 7");
        }
        double f1w = ev_.f1(1.0 / (2.0 * alpha0));
        auto g1 = [&](double s) {
            return (1.0 / s - 1.0 / beta0) * ev_.F1((0.5 - s) / alpha0);
        };
        auto g2 = [&](double s) {
            return (1.0 / s - 1.0 / beta0) * ev_.F2((1.0 - s) / alpha0);
        };
        double a2 = ev_.constants().alpha2;
        double I1 = piecewise(g1, alpha0, delta0, {0.5 - 3.0 * alpha0});
        double I2 = piecewise(g2, delta0, beta0,
                              {1.0 - a2 * alpha0, 1.0 - 4.0 * alpha0,
                               1.0 - 2.0 * alpha0});
        return static_cast<double>(k) / beta0 - 1.0 +
               (I1 + std::exp(-euler_gamma) / alpha0 * I2) / f1w;
    }

    // Switch point: where the one-dimensional bound F1(6 - 12 s) crosses
    // (12/e^gamma) F2(12 - 12 s). Unique root in (5/12, 1/2).
    double solve_delta0() const {
        const double coef = 12.0 * std::exp(-euler_gamma);
        auto phi = [&](double d) {
            return ev_.F1(6.0 - 12.0 * d) - coef * ev_.F2(12.0 - 12.0 * d);
        };
        return find_root(phi, {5.0 / 12.0 + 1e-9, 0.5 - 1e-9}, 1e-13);
    }

    // Stationary beta0 for degree k: solves
    //   (12/e^gamma) Int_{delta0}^{beta0} F2(12 - 12 s) ds
    //     = f1(6) k - Int_{1/12}^{delta0} F1(6 - 12 s) ds.
    // Root-finds on (delta0, 5/6]; beyond 5/6 the equation is solved exactly.
    Beta0Solution solve_beta0(int k, std::optional<double> delta0 = {}) const {
        if (k < 1) throw InvalidParameters("degree k must be >= 1");
        double d0 = delta0.value_or(C_.delta0_star);
        if (!(d0 > 1.0 / 12.0 && d0 < 0.5)) {
            throw InvalidParameters("require 1/12 < delta0 < 1/2");
        }
        auto gA = [&](double s) { return ev_.F1(6.0 - 12.0 * s); };
        double A = piecewise(gA, 1.0 / 12.0, d0, {0.25});
        double target = C_.f1_at_6 * k - A;
        if (target <= 0.0) {
            throw InvalidParameters(
                "no stationary beta0 above delta0 for these parameters");
        }
        const double coef = 12.0 * std::exp(-euler_gamma);
        auto gB = [&](double s) { return ev_.F2(12.0 - 12.0 * s); };
        double B56 = coef * piecewise(gB, d0, 5.0 / 6.0, f2_cuts());
        if (B56 >= target) {
            auto phi = [&](double b) {
                return coef * piecewise(gB, d0, b, f2_cuts()) - target;
            };
            double b = find_root(phi, {d0 + 1e-9, 5.0 / 6.0}, 1e-13);
            return {b, Beta0Branch::small_k};
        }
        // Tail above 5/6 in closed form: F2(12-12s) = e^{2g}/(18 (1-s)^2).
        double inv = 6.0 + C_.M1 * (target - B56);  // 1/(1 - beta0)
        return {1.0 - 1.0 / inv, Beta0Branch::closed_form};
    }

    double r_real(int k) const {
        auto b = solve_beta0(k);
        return r_of(k, b.beta0, C_.delta0_star);
    }

    // Integer exponent: smallest admissible integer above the optimum.
    int r_integer(int k) const {
        auto b = solve_beta0(k);
        double rr = r_of(k, b.beta0, C_.delta0_star);
        int r = static_cast<int>(std::floor(rr)) + 1;
        while (b.beta0 / k <= 1.0 / (r + 1.0)) ++r;
        return r;
    }

    // r evaluated at the simple level beta0 = 1 - 1/k; behaves like
    // k + c log k + O(1) as k grows. Requires k >= 7 so the closed-form
    // branch applies to the comparison row.
    double asymptotic_r(int k) const {
        if (k < 7) throw InvalidParameters("asymptotic row starts at k = 7");
        return r_of(k, 1.0 - 1.0 / static_cast<double>(k), C_.delta0_star);
    }

    OptimizationReport optimize(int klo, int khi) const {
        if (klo < 1 || khi < klo) {
            throw InvalidParameters("bad degree range");
        }
        OptimizationReport report{C_, {}};
        for (int k = klo; k <= khi; ++k) {
            auto b = solve_beta0(k);
            double rr = r_of(k, b.beta0, C_.delta0_star);
            int ri = static_cast<int>(std::floor(rr)) + 1;
            while (b.beta0 / k <= 1.0 / (ri + 1.0)) ++ri;
            report.rows.push_back(
                {k, C_.delta0_star, b.beta0, b.branch, rr, ri});
        }
        return report;
    }

private:
    // Junctions of s -> F2(12 - 12 s): argument hits alpha2 and 4. The
    // argument-2 junction sits at s = 5/6, always an endpoint here.
    std::vector<double> f2_cuts() const {
        return {1.0 - ev_.constants().alpha2 / 12.0, 2.0 / 3.0};
    }

    // Integral of g over [a, b] split at interior cut points, so the
    // adaptive rule never straddles a formula junction.
    template <class G>
    double piecewise(G g, double a, double b, std::vector<double> cuts) const {
        std::vector<double> pts{a};
        for (double c : cuts) {
            if (c > a + 1e-14 && c < b - 1e-14) pts.push_back(c);
        }
        pts.push_back(b);
        std::sort(pts.begin(), pts.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            total += integrate(g, pts[i], pts[i + 1], spec_);
        }
        return total;
    }

    const SieveFunctionEvaluator& ev_;
    QuadratureSpec spec_;
    ExponentConstants C_{};
};

}  // namespace polysieve
