#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polysieve/errors.hpp"
#include "polysieve/factor.hpp"
#include "polysieve/int128.hpp"
#include "polysieve/local_density.hpp"
#include "polysieve/primes.hpp"
#include "polysieve/reference_tables.hpp"

// Empirical harness for the weighted sieve over A = { f(p) : x < p <= 2x }.
// With z = N^alpha, y = N^beta and eta = r + 1 - 1/beta > 0, the weighted sum
//
//   W = sum_{n in A, (n, P(z)) = 1} ( 1 - (1/eta) sum_{z <= p < y, p | n}
//                                         (1 - log p / log y) )
//
// has the property that every survivor with positive weight and no repeated
// prime factor in [z, y) satisfies Omega(n) <= r: primes below y contribute
// at least 1 - log_y p each and primes above contribute at least log_y p, so
// Omega(n) < eta + log_y n <= eta + 1/beta = r + 1. That implication is
// combinatorial, not asymptotic, so Pr_violations must come out 0 on every
// valid parameterization; this module checks it by complete factorization.

namespace polysieve {

struct SieveSequence {
    IntPolynomial f;
    uint64_t x;
    u128 N;  // max of the values; ~ (leading coefficient) (2x)^k
    std::vector<uint64_t> args;  // primes in (x, 2x], ascending
    std::vector<u128> values;    // f(p), parallel to args

    uint64_t X() const { return args.size(); }
};

// Enumerates A by a segmented prime sieve; values are overflow-checked.
// Admissibility of f is not checked here (front ends warn about it).
inline SieveSequence build_sequence(const IntPolynomial& f, uint64_t x) {
    if (x < 10 || x > 100000000ull) {
        throw InvalidParameters("x must be in [10, 1e8]");
    }
    (void)f.eval_checked(2 * x);  // fail fast: largest argument
    SieveSequence A{f, x, 0, {}, {}};
    for_each_prime(x, 2 * x, [&](uint64_t p) {
        i128 v = f.eval_checked(p);
        if (v <= 0) {
            throw InvalidParameters("f(" + std::to_string(p) +
                                    ") is not positive");
        }
        A.args.push_back(p);
        auto uv = static_cast<u128>(v);
        A.values.push_back(uv);
        if (uv > A.N) A.N = uv;
    });
    return A;
}

// #{ n in A : no prime < z divides n }, by trial division.
inline uint64_t sifted_count(const SieveSequence& A, double z) {
    if (!(z >= 2.0)) throw InvalidParameters("z must be >= 2");
    if (z > 1e8) {
        throw InvalidParameters("sifting level too large for trial division");
    }
    auto ps = primes_up_to(static_cast<uint64_t>(std::ceil(z)) - 1);
    uint64_t count = 0;
    for (u128 v : A.values) {
        bool hit = false;
        for (uint32_t p : ps) {
            if (v % p == 0) {
                hit = true;
                break;
            }
        }
        if (!hit) ++count;
    }
    return count;
}

struct WeightReport {
    int r;
    double alpha, beta;
    double z, y;      // z = N^alpha, y = N^beta
    double eta;       // r + 1 - 1/beta
    double W;         // the weighted sum over survivors
    uint64_t X;       // |A|
    uint64_t survivors;
    uint64_t positive_weight;
    uint64_t square_hit;      // survivors divisible by p^2, z <= p < y
    uint64_t Pr_violations;   // positive-weight squarefree-in-[z,y) survivors
                              // with Omega > r; always 0
    double log_N;
};

struct ElementRecord {
    uint64_t p;
    u128 value;
    int omega;
    double weight;  // meaningful only when survivor
    bool survivor;
};

struct WeightAnalysis {
    WeightReport report;
    std::vector<ElementRecord> elements;
    std::map<int, uint64_t> histogram;  // Omega over all of A
};

// Single pass: factorize every element, classify survivors, accumulate the
// weighted sum, and count the quantities of the deduction. z below 2 is
// allowed (empty sifting set, everything survives). Weights within 1e-12 of
// zero are re-evaluated in long double with compensated summation and then
// treated as positive only when clearly above zero, so a borderline weight
// can never manufacture a violation.
inline WeightAnalysis analyze_weights(const SieveSequence& A, int r,
                                      double alpha, double beta,
                                      const FactorPolicy& policy = {}) {
    int k = A.f.degree();
    if (!(0.0 < alpha && alpha < beta && beta < 1.0 / k)) {
        throw InvalidParameters("require 0 < alpha < beta < 1/k");
    }
    if (r < 0) throw InvalidParameters("r must be >= 0");
    double log_N = std::log(to_double(A.N));
    double z = std::exp(alpha * log_N);
    double y = std::exp(beta * log_N);
    double log_y = beta * log_N;
    double eta = r + 1.0 - 1.0 / beta;
    if (!(eta > 0.0)) {
        throw InvalidParameters("eta = r + 1 - 1/beta must be positive");
    }

    Factorizer fac(policy);
    WeightAnalysis out;
    out.report = {r, alpha, beta, z, y, eta, 0.0, A.X(), 0, 0, 0, 0, log_N};
    out.elements.reserve(A.values.size());

    double Wsum = 0.0, Wcomp = 0.0;
    for (std::size_t i = 0; i < A.values.size(); ++i) {
        u128 v = A.values[i];
        auto factors = fac.factorize(v);  // ascending primes
        int omega = 0;
        for (const auto& [p, e] : factors) omega += e;
        ++out.histogram[omega];

        bool survivor =
            factors.empty() || to_double(factors.front().first) >= z;
        double w = 0.0;
        if (survivor) {
            bool square = false;
            double sum = 0.0;
            for (const auto& [p, e] : factors) {
                double pd = to_double(p);
                if (pd >= z && pd < y) {
                    sum += 1.0 - std::log(pd) / log_y;
                    if (e >= 2) square = true;
                }
            }
            w = 1.0 - sum / eta;
            bool positive;
            if (std::fabs(w) < 1e-12) {
                long double acc = 0.0L, comp = 0.0L;
                for (const auto& [p, e] : factors) {
                    double pd = to_double(p);
                    if (pd >= z && pd < y) {
                        long double term =
                            1.0L - std::log(static_cast<long double>(pd)) /
                                       static_cast<long double>(log_y);
                        long double yk = term - comp;
                        long double t = acc + yk;
                        comp = (t - acc) - yk;
                        acc = t;
                    }
                }
                long double wl = 1.0L - acc / static_cast<long double>(eta);
                positive = wl > 1e-15L;
            } else {
                positive = w > 0.0;
            }
            ++out.report.survivors;
            if (square) ++out.report.square_hit;
            if (positive) ++out.report.positive_weight;
            if (positive && !square && omega > r) ++out.report.Pr_violations;
            double yk = w - Wcomp;
            double t = Wsum + yk;
            Wcomp = (t - Wsum) - yk;
            Wsum = t;
        }
        out.elements.push_back({A.args[i], v, omega, survivor ? w : 0.0,
                                survivor});
    }
    out.report.W = Wsum;
    return out;
}

inline WeightReport weighted_sum(const SieveSequence& A, int r, double alpha,
                                 double beta,
                                 const FactorPolicy& policy = {}) {
    return analyze_weights(A, r, alpha, beta, policy).report;
}

// Same computation with the emphasis on the theorem: the caller asserts
// Pr_violations == 0. Kept as its own entry point to match its role.
inline WeightReport verify_Pr_deduction(const SieveSequence& A, int r,
                                        double alpha, double beta,
                                        const FactorPolicy& policy = {}) {
    return analyze_weights(A, r, alpha, beta, policy).report;
}

struct OmegaStatistics {
    std::map<int, uint64_t> histogram;
    int r;
    uint64_t count_le_r;      // #{ Omega(f(p)) <= r }
    double normalized_count;  // count_le_r / (x / log^2 x)
};

inline OmegaStatistics omega_statistics(const SieveSequence& A, int r,
                                        const FactorPolicy& policy = {}) {
    if (r < 0) throw InvalidParameters("r must be >= 0");
    Factorizer fac(policy);
    OmegaStatistics st{{}, r, 0, 0.0};
    for (u128 v : A.values) {
        int om = fac.big_omega(v);
        ++st.histogram[om];
        if (om <= r) ++st.count_le_r;
    }
    double lx = std::log(static_cast<double>(A.x));
    st.normalized_count =
        static_cast<double>(st.count_le_r) /
        (static_cast<double>(A.x) / (lx * lx));
    return st;
}

// Degree-appropriate default exponent from the bundled table (k = 2..10).
inline OmegaStatistics omega_statistics(const SieveSequence& A) {
    int r = reference::default_r_int(A.f.degree());
    if (r < 0) {
        throw InvalidParameters(
            "no tabulated exponent for degree " +
            std::to_string(A.f.degree()) + "; pass r explicitly");
    }
    return omega_statistics(A, r);
}

}  // namespace polysieve
