#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "polysieve/constants.hpp"
#include "polysieve/errors.hpp"
#include "polysieve/interp.hpp"
#include "polysieve/numerics.hpp"

// Sifting functions of the two-sided sieve in dimensions 1 and 2.
//
// The upper function F and lower function f of dimension kappa satisfy the
// coupled delay system
//
//     (s^kappa F(s))' = kappa s^{kappa-1} f(s-1)
//     (s^kappa f(s))' = kappa s^{kappa-1} F(s-1)
//
// with F = 1/sigma below its crossing value alpha_kappa and f = 0 below
// beta_kappa. Integrating interval by interval (method of steps) from the
// elementary pieces gives, with g the Euler-Mascheroni constant:
//
// kappa = 1 (alpha_1 = beta_1 = 2):
//   F1(s) = 2e^g / s                       on (0, 3]
//   F1(s) = (2e^g/s) (1 + J1(s))           on (3, 5],  J1 = Int_3^s log(t-2)/(t-1) dt
//   f1(s) = 0                              on (0, 2]
//   f1(s) = 2e^g log(s-1) / s              on (2, 4]
//   f1(s) = (2e^g log 3 + K1(s)) / s       on (4, 6],  K1 = Int_4^s F1(t-1) dt
//
// kappa = 2 (alpha_2 = 5.3577, beta_2 = 4.2664):
//   sigma2(s) = s^2 / (8 e^{2g})                                on (0, 2]
//   sigma2(s) = (2(s-1)^2 - s^2 log(s/2)) / (4 e^{2g})           on (2, 4]
//   sigma2(s) = s^2 ((9 - 8 log 2)/32 - T2(s)/2) / e^{2g}        on (4, alpha_2]
//       T2 = Int_4^s (2(t-3)^2 - (t-2)^2 log((t-2)/2)) / t^3 dt
//   F2 = 1/sigma2                                on (0, alpha_2]
//   F2(s) = (alpha_2^2 F2(alpha_2) + 2 H2(s)) / s^2   on (alpha_2, 7)
//       H2 = Int_{alpha_2}^s t f2(t-1) dt
//   f2(s) = 0                                    on (0, beta_2]
//   f2(s) = 2 G2(s) / s^2                        on (beta_2, 6]
//       G2 = Int_{beta_2}^s v F2(v-1) dv
//
// The five inner integrals are cached as cumulative tables at construction
// and every table is validated against direct quadrature before use.

namespace polysieve {

struct SieveConstants {
    double gamma = euler_gamma;
    double alpha2 = 5.3577;  // crossing value of F in dimension 2
    double beta2 = 4.2664;   // crossing value of f in dimension 2
};

enum class SieveFn { f1, F1, f2, F2, sigma2 };

inline const char* to_string(SieveFn fn) {
    switch (fn) {
        case SieveFn::f1: return "f1";
        case SieveFn::F1: return "F1";
        case SieveFn::f2: return "f2";
        case SieveFn::F2: return "F2";
        case SieveFn::sigma2: return "sigma2";
    }
    return "?";
}

class SieveFunctionEvaluator {
public:
    explicit SieveFunctionEvaluator(SieveConstants constants = {},
                                    QuadratureSpec quad = {},
                                    double table_step = 5e-4)
        : cs_(constants), quad_(quad) {
        eg_ = std::exp(cs_.gamma);
        e2g_ = eg_ * eg_;
        log3_ = std::log(3.0);
        sigma2_c_ = (9.0 - 8.0 * std::log(2.0)) / 32.0;

        QuadratureSpec table_spec = quad_;
        table_spec.abs_tol = std::min(quad_.abs_tol, 1e-14);
        table_spec.rel_tol = std::min(quad_.rel_tol, 1e-12);

        J1_ = CumulativeTable::build(
            [](double t) { return std::log(t - 2.0) / (t - 1.0); }, 3.0, 5.0,
            table_step, table_spec);
        K1_ = CumulativeTable::build([this](double t) { return F1(t - 1.0); },
                                     4.0, 6.0, table_step, table_spec);
        T2_ = CumulativeTable::build(
            [](double t) {
                double u = t - 3.0, v = t - 2.0;
                return (2.0 * u * u - v * v * std::log(0.5 * v)) / (t * t * t);
            },
            4.0, cs_.alpha2, table_step, table_spec);
        F2_alpha2_ = 1.0 / sigma2(cs_.alpha2);
        G2_ = CumulativeTable::build([this](double v) { return v * F2(v - 1.0); },
                                     cs_.beta2, 6.0, table_step, table_spec);
        H2_ = CumulativeTable::build([this](double t) { return t * f2(t - 1.0); },
                                     cs_.alpha2, 7.0, table_step, table_spec);
        validate_tables();
    }

    const SieveConstants& constants() const { return cs_; }

    // Auxiliary function of dimension 2; F2 = 1/sigma2 on (0, alpha_2].
    double sigma2(double s) const {
        if (!(s > 0.0) || s > cs_.alpha2) {
            throw DomainError("sigma2: s must lie in (0, alpha2], got s = " +
                              std::to_string(s));
        }
        if (s <= 2.0) return s * s / (8.0 * e2g_);
        if (s <= 4.0) {
            double u = s - 1.0;
            return (2.0 * u * u - s * s * std::log(0.5 * s)) / (4.0 * e2g_);
        }
        return s * s * (sigma2_c_ - 0.5 * T2_(s)) / e2g_;
    }

    // Lower sifting function, dimension 1, implemented on (0, 6].
    double f1(double s) const {
        if (!(s > 0.0) || s > 6.0) {
            throw DomainError("f1: s must lie in (0, 6], got s = " + std::to_string(s));
        }
        if (s <= 2.0) return 0.0;
        if (s <= 4.0) return 2.0 * eg_ * std::log(s - 1.0) / s;
        return (2.0 * eg_ * log3_ + K1_(s)) / s;
    }

    // Upper sifting function, dimension 1, implemented on (0, 5].
    double F1(double s) const {
        if (!(s > 0.0) || s > 5.0) {
            throw DomainError("F1: s must lie in (0, 5], got s = " + std::to_string(s));
        }
        if (s <= 3.0) return 2.0 * eg_ / s;
        return 2.0 * eg_ * (1.0 + J1_(s)) / s;
    }

    // Lower sifting function, dimension 2, implemented on (0, 6].
    double f2(double s) const {
        if (!(s > 0.0) || s > 6.0) {
            throw DomainError("f2: s must lie in (0, 6], got s = " + std::to_string(s));
        }
        if (s <= cs_.beta2) return 0.0;
        return 2.0 * G2_(s) / (s * s);
    }

    // Upper sifting function, dimension 2, implemented on (0, 7).
    double F2(double s) const {
        if (!(s > 0.0) || s >= 7.0) {
            throw DomainError("F2: s must lie in (0, 7), got s = " + std::to_string(s));
        }
        if (s <= cs_.alpha2) return 1.0 / sigma2(s);
        return (cs_.alpha2 * cs_.alpha2 * F2_alpha2_ + 2.0 * H2_(s)) / (s * s);
    }

    double operator()(SieveFn which, double s) const {
        switch (which) {
            case SieveFn::f1: return f1(s);
            case SieveFn::F1: return F1(s);
            case SieveFn::f2: return f2(s);
            case SieveFn::F2: return F2(s);
            case SieveFn::sigma2: return sigma2(s);
        }
        throw InvalidParameters("unknown sieve function");
    }

    // Central-difference residual of the delay relation
    // (s^kappa X(s))' = kappa s^{kappa-1} Y(s-1) at a point s of the smooth
    // continuation range (above the crossing value, s +- h inside the
    // implemented domain). h must lie in [1e-5, 1e-3].
    double dde_residual(SieveFn which, double s, double h) const {
        if (!(h >= 1e-5) || !(h <= 1e-3)) {
            throw DomainError("dde_residual: h must lie in [1e-5, 1e-3]");
        }
        int kappa = 0;
        double lo = 0.0, hi = 0.0;
        switch (which) {
            case SieveFn::f1: kappa = 1; lo = 2.0; hi = 6.0; break;
            case SieveFn::F1: kappa = 1; lo = 2.0; hi = 5.0; break;
            case SieveFn::f2: kappa = 2; lo = cs_.beta2; hi = 6.0; break;
            case SieveFn::F2: kappa = 2; lo = cs_.alpha2; hi = 7.0; break;
            case SieveFn::sigma2:
                throw DomainError("dde_residual: sigma2 has no companion function");
        }
        bool hi_open = (which == SieveFn::F2);
        if (!(s - h > lo) || (hi_open ? !(s + h < hi) : !(s + h <= hi))) {
            throw DomainError("dde_residual: s +- h leaves the continuation range of " +
                              std::string(to_string(which)));
        }
        auto weighted = [&](double t) {
            double x = (*this)(which, t);
            return kappa == 1 ? t * x : t * t * x;
        };
        double derivative = (weighted(s + h) - weighted(s - h)) / (2.0 * h);
        SieveFn companion = (which == SieveFn::f1)   ? SieveFn::F1
                            : (which == SieveFn::F1) ? SieveFn::f1
                            : (which == SieveFn::f2) ? SieveFn::F2
                                                     : SieveFn::f2;
        double rhs = static_cast<double>(kappa) *
                     std::pow(s, static_cast<double>(kappa - 1)) *
                     (*this)(companion, s - 1.0);
        return std::abs(derivative - rhs);
    }

    struct Junction {
        const char* name;
        double left;   // value of the piece ending at the junction
        double right;  // value of the piece starting there
    };

    // Both adjacent formulas evaluated exactly at every junction. The public
    // piecewise evaluators use the left piece at a junction; this report
    // exists so the agreement itself is checkable.
    std::vector<Junction> junction_report() const {
        const double a2 = cs_.alpha2, b2 = cs_.beta2;
        std::vector<Junction> out;
        out.push_back({"f1 at 2", 0.0, 2.0 * eg_ * std::log(1.0) / 2.0});
        out.push_back({"F1 at 3", 2.0 * eg_ / 3.0, 2.0 * eg_ * (1.0 + J1_(3.0)) / 3.0});
        out.push_back({"f1 at 4", 2.0 * eg_ * log3_ / 4.0,
                       (2.0 * eg_ * log3_ + K1_(4.0)) / 4.0});
        out.push_back({"sigma2 at 2", 4.0 / (8.0 * e2g_),
                       (2.0 * 1.0 - 4.0 * std::log(1.0)) / (4.0 * e2g_)});
        out.push_back({"sigma2 at 4",
                       (2.0 * 9.0 - 16.0 * std::log(2.0)) / (4.0 * e2g_),
                       16.0 * (sigma2_c_ - 0.5 * T2_(4.0)) / e2g_});
        out.push_back({"F2 at alpha2", 1.0 / sigma2(a2),
                       (a2 * a2 * F2_alpha2_ + 2.0 * H2_(a2)) / (a2 * a2)});
        out.push_back({"f2 at beta2", 0.0, 2.0 * G2_(b2) / (b2 * b2)});
        return out;
    }

private:
    void validate_tables() {
        QuadratureSpec check = quad_;
        check.abs_tol = std::min(quad_.abs_tol, 1e-13);
        check.rel_tol = std::min(quad_.rel_tol, 1e-11);
        std::mt19937 rng(0x5eed1u);

        auto verify = [&](const char* name, const CumulativeTable& table,
                          auto&& g) {
            std::uniform_real_distribution<double> pick(table.lo(), table.hi());
            for (int i = 0; i < 120; ++i) {
                double x = pick(rng);
                double direct = integrate(g, table.lo(), x, check);
                if (std::abs(table(x) - direct) > 1e-8) {
                    throw NonConvergence(std::string("table validation failed for ") +
                                         name + " at x = " + std::to_string(x));
                }
            }
        };
        verify("J1", J1_, [](double t) { return std::log(t - 2.0) / (t - 1.0); });
        verify("K1", K1_, [this](double t) { return F1(t - 1.0); });
        verify("T2", T2_, [](double t) {
            double u = t - 3.0, v = t - 2.0;
            return (2.0 * u * u - v * v * std::log(0.5 * v)) / (t * t * t);
        });
        verify("G2", G2_, [this](double v) { return v * F2(v - 1.0); });
        verify("H2", H2_, [this](double t) { return t * f2(t - 1.0); });
    }

    SieveConstants cs_;
    QuadratureSpec quad_;
    double eg_ = 0.0, e2g_ = 0.0, log3_ = 0.0, sigma2_c_ = 0.0;
    CumulativeTable J1_, K1_, T2_, G2_, H2_;
    double F2_alpha2_ = 0.0;
};

}  // namespace polysieve
