#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "polysieve/errors.hpp"
#include "polysieve/int128.hpp"
#include "polysieve/local_density.hpp"
#include "polysieve/primes.hpp"
#include "polysieve/weighted_sieve.hpp"

using namespace polysieve;

namespace {

// Schoolbook factorization for the oracle: trial division only, so the
// values must stay modest. Returns ascending (prime, exponent) pairs.
std::vector<std::pair<uint64_t, int>> trial_factorize(u128 v) {
    std::vector<std::pair<uint64_t, int>> out;
    u128 m = v;
    for (uint64_t d = 2; static_cast<u128>(d) * d <= m; ++d) {
        if (m % d == 0) {
            int e = 0;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            out.push_back({d, e});
        }
    }
    if (m > 1) out.push_back({static_cast<uint64_t>(m), 1});
    return out;
}

struct NaiveTotals {
    uint64_t survivors = 0;
    uint64_t positive = 0;
    uint64_t square = 0;
    uint64_t violations = 0;
    double W = 0.0;
};

// Direct restatement of the weighting rules in plain double arithmetic,
// without compensated summation or the borderline re-check.
NaiveTotals naive_weights(const SieveSequence& A, int r, double alpha,
                          double beta) {
    double log_N = std::log(to_double(A.N));
    double z = std::exp(alpha * log_N);
    double y = std::exp(beta * log_N);
    double log_y = beta * log_N;
    double eta = r + 1.0 - 1.0 / beta;
    NaiveTotals n;
    for (u128 v : A.values) {
        auto fs = trial_factorize(v);
        int omega = 0;
        for (const auto& [p, e] : fs) omega += e;
        if (!fs.empty() && static_cast<double>(fs.front().first) < z) continue;
        ++n.survivors;
        double sum = 0.0;
        bool square = false;
        for (const auto& [p, e] : fs) {
            double pd = static_cast<double>(p);
            if (pd >= z && pd < y) {
                sum += 1.0 - std::log(pd) / log_y;
                if (e >= 2) square = true;
            }
        }
        double w = 1.0 - sum / eta;
        if (square) ++n.square;
        if (w > 0.0) {
            ++n.positive;
            if (!square && omega > r) ++n.violations;
        }
        n.W += w;
    }
    return n;
}

uint64_t naive_sifted(const SieveSequence& A, double z) {
    uint64_t count = 0;
    for (u128 v : A.values) {
        bool hit = false;
        for (uint64_t d = 2; static_cast<double>(d) < z; ++d) {
            if (v % d == 0) {
                hit = true;
                break;
            }
        }
        if (!hit) ++count;
    }
    return count;
}

}  // namespace

TEST(SieveSequenceBuild, HandEnumeration) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 10);
    ASSERT_EQ(A.X(), 4u);
    EXPECT_EQ(A.args, (std::vector<uint64_t>{11, 13, 17, 19}));
    std::vector<uint64_t> values;
    for (u128 v : A.values) values.push_back(static_cast<uint64_t>(v));
    EXPECT_EQ(values, (std::vector<uint64_t>{133, 183, 307, 381}));
    EXPECT_EQ(static_cast<uint64_t>(A.N), 381u);
    EXPECT_EQ(A.x, 10u);
}

TEST(SieveSequenceBuild, CountsMatchPrimeCounter) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 10000);
    EXPECT_EQ(A.X(), 1033u);
    EXPECT_EQ(A.X(), prime_count(10000, 20000));

    auto B = build_sequence(IntPolynomial({2, 1}), 100);
    EXPECT_EQ(B.X(), 21u);
    EXPECT_EQ(B.X(), prime_count(100, 200));
    EXPECT_EQ(static_cast<uint64_t>(B.values.front()),
              B.args.front() + 2);
}

TEST(SieveSequenceBuild, RejectsBadInputs) {
    IntPolynomial f({1, 1, 1});
    EXPECT_THROW(build_sequence(f, 9), InvalidParameters);
    EXPECT_THROW(build_sequence(f, 100000001ull), InvalidParameters);
    // x^2 - 1000 goes negative on (10, 20].
    EXPECT_THROW(build_sequence(IntPolynomial({-1000, 0, 1}), 10),
                 InvalidParameters);
    // (2e8)^6 ~ 6.4e49 exceeds 128 bits; the fail-fast probe catches it.
    EXPECT_THROW(build_sequence(IntPolynomial({1, 0, 0, 0, 0, 0, 1}),
                                100000000ull),
                 Overflow);
}

TEST(SiftedCount, HandValuesAndNaiveAgreement) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 10);
    // Values 133 = 7*19, 183 = 3*61, 307 prime, 381 = 3*127.
    EXPECT_EQ(sifted_count(A, 2.0), 4u);
    EXPECT_EQ(sifted_count(A, 3.0), 4u);
    EXPECT_EQ(sifted_count(A, 4.0), 2u);
    EXPECT_EQ(sifted_count(A, 8.0), 1u);
    EXPECT_THROW(sifted_count(A, 1.9), InvalidParameters);
    EXPECT_THROW(sifted_count(A, 2e8), InvalidParameters);

    for (uint64_t x : {50ull, 200ull}) {
        auto B = build_sequence(IntPolynomial({1, 1, 1}), x);
        for (double z : {2.0, 5.0, 17.5, 30.0}) {
            EXPECT_EQ(sifted_count(B, z), naive_sifted(B, z))
                << "x = " << x << " z = " << z;
        }
    }
}

TEST(WeightedSieve, HandComputedWeights) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 10);
    auto an = analyze_weights(A, 4, 0.05, 0.25);
    const auto& rep = an.report;
    // z = 381^0.05 < 2, so everything survives; y = 381^0.25 ~ 4.42 covers
    // the primes 2 and 3; eta = 4 + 1 - 4 = 1.
    EXPECT_EQ(rep.survivors, 4u);
    EXPECT_EQ(rep.X, 4u);
    EXPECT_EQ(rep.square_hit, 0u);
    EXPECT_EQ(rep.positive_weight, 4u);
    EXPECT_EQ(rep.Pr_violations, 0u);
    double log_y = 0.25 * std::log(381.0);
    double eta = 4.0 + 1.0 - 1.0 / 0.25;
    EXPECT_NEAR(rep.eta, eta, 1e-15);
    double w3 = 1.0 - (1.0 - std::log(3.0) / log_y) / eta;  // 183 and 381
    EXPECT_NEAR(rep.W, 2.0 + 2.0 * w3, 1e-12);

    EXPECT_EQ(an.histogram, (std::map<int, uint64_t>{{1, 1}, {2, 3}}));
    ASSERT_EQ(an.elements.size(), 4u);
    EXPECT_EQ(an.elements[0].p, 11u);
    EXPECT_EQ(static_cast<uint64_t>(an.elements[0].value), 133u);
    EXPECT_EQ(an.elements[0].omega, 2);
    EXPECT_TRUE(an.elements[0].survivor);
    EXPECT_NEAR(an.elements[0].weight, 1.0, 1e-15);  // 7 and 19 above y
    EXPECT_NEAR(an.elements[1].weight, w3, 1e-15);
}

TEST(WeightedSieve, ReferenceParametersAtDeskScale) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 10000);
    auto an = analyze_weights(A, 4, 1.0 / 24.0, 0.6131 / 2.0);
    const auto& rep = an.report;
    EXPECT_EQ(rep.X, 1033u);
    EXPECT_EQ(rep.survivors, 1033u);  // z < 3 and every value is odd
    EXPECT_EQ(rep.positive_weight, 922u);
    EXPECT_EQ(rep.square_hit, 84u);
    EXPECT_EQ(rep.Pr_violations, 0u);
    EXPECT_NEAR(rep.W, 478.92656738633104, 1e-9);
    EXPECT_GT(rep.W, 0.0);

    uint64_t total = 0;
    for (const auto& [om, count] : an.histogram) total += count;
    EXPECT_EQ(total, rep.X);
    EXPECT_EQ(rep.survivors, sifted_count(A, rep.z));
    EXPECT_LE(rep.positive_weight, rep.survivors);
    EXPECT_LE(rep.square_hit, rep.survivors);

    auto ws = weighted_sum(A, 4, 1.0 / 24.0, 0.6131 / 2.0);
    auto vp = verify_Pr_deduction(A, 4, 1.0 / 24.0, 0.6131 / 2.0);
    EXPECT_EQ(ws.W, rep.W);
    EXPECT_EQ(vp.W, rep.W);
    EXPECT_EQ(vp.Pr_violations, 0u);
}

TEST(WeightedSieve, MatchesNaiveRecomputation) {
    std::mt19937 rng(0xabcdef01u);
    std::vector<std::vector<long long>> polys = {
        {1, 1, 1}, {2, 1}, {1, 1, 0, 1}};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto& coeffs = polys[trial % polys.size()];
        IntPolynomial f(coeffs);
        int k = f.degree();
        uint64_t xmax = k == 1 ? 3000 : (k == 2 ? 1500 : 400);
        uint64_t x = 30 + static_cast<uint64_t>(unit(rng) *
                                                static_cast<double>(xmax - 30));
        double cap = 1.0 / k;
        double beta = 0.15 + unit(rng) * (cap - 0.02 - 0.15);
        double alpha = 0.02 + unit(rng) * (beta / 2.0 - 0.02);
        int r = static_cast<int>(std::ceil(1.0 / beta - 1.0 + 0.01)) +
                static_cast<int>(unit(rng) * 3.0);
        auto A = build_sequence(f, x);
        auto rep = weighted_sum(A, r, alpha, beta);
        auto naive = naive_weights(A, r, alpha, beta);
        EXPECT_EQ(rep.survivors, naive.survivors) << "trial " << trial;
        EXPECT_EQ(rep.positive_weight, naive.positive) << "trial " << trial;
        EXPECT_EQ(rep.square_hit, naive.square) << "trial " << trial;
        EXPECT_EQ(rep.Pr_violations, naive.violations) << "trial " << trial;
        EXPECT_NEAR(rep.W, naive.W, 1e-9) << "trial " << trial;
        EXPECT_EQ(rep.Pr_violations, 0u) << "trial " << trial;
        EXPECT_LE(rep.W, static_cast<double>(rep.survivors) + 1e-9)
            << "trial " << trial;
    }
}

// With eta enormous every weight is within X_max/eta of 1, so W pins to the
// survivor count from below.
TEST(WeightedSieve, HugeEtaPinsWeightsToOne) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 1000);
    auto rep = weighted_sum(A, 2000000000, 0.04, 0.30);
    EXPECT_LE(rep.W, static_cast<double>(rep.survivors) + 1e-12);
    EXPECT_NEAR(rep.W, static_cast<double>(rep.survivors), 1e-5);
}

TEST(WeightedSieve, ParameterValidation) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 100);
    EXPECT_THROW(analyze_weights(A, 4, 0.3, 0.2), InvalidParameters);
    EXPECT_THROW(analyze_weights(A, 4, 0.1, 0.5), InvalidParameters);
    EXPECT_THROW(analyze_weights(A, 4, 0.0, 0.3), InvalidParameters);
    EXPECT_THROW(analyze_weights(A, -1, 0.1, 0.3), InvalidParameters);
    EXPECT_THROW(analyze_weights(A, 1, 0.1, 0.3066), InvalidParameters);
    EXPECT_NO_THROW(analyze_weights(A, 4, 0.1, 0.3));
}

TEST(WeightedSieve, OmegaStatisticsConsistency) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 10000);
    auto with_r = omega_statistics(A, 4);
    auto defaulted = omega_statistics(A);  // degree 2 tabulates r = 4
    EXPECT_EQ(defaulted.r, 4);
    EXPECT_EQ(with_r.histogram, defaulted.histogram);
    EXPECT_EQ(with_r.count_le_r, defaulted.count_le_r);
    EXPECT_GT(with_r.count_le_r, 0u);

    uint64_t manual = 0;
    for (const auto& [om, count] : with_r.histogram) {
        if (om <= 4) manual += count;
    }
    EXPECT_EQ(with_r.count_le_r, manual);

    double lx = std::log(10000.0);
    EXPECT_NEAR(with_r.normalized_count,
                static_cast<double>(manual) / (10000.0 / (lx * lx)), 1e-12);

    // Same Omega multiset as the weighted pass.
    auto an = analyze_weights(A, 4, 1.0 / 24.0, 0.3);
    EXPECT_EQ(an.histogram, with_r.histogram);

    EXPECT_THROW(omega_statistics(A, -1), InvalidParameters);
    std::vector<long long> high(12, 0);
    high[0] = 1;
    high[1] = 1;
    high[11] = 1;
    auto H = build_sequence(IntPolynomial(high), 10);
    EXPECT_THROW(omega_statistics(H), InvalidParameters);
    EXPECT_NO_THROW(omega_statistics(H, 20));
}

TEST(WeightedSieve, Deterministic) {
    auto A = build_sequence(IntPolynomial({1, 1, 1}), 2000);
    auto a = analyze_weights(A, 4, 0.04, 0.30);
    auto b = analyze_weights(A, 4, 0.04, 0.30);
    EXPECT_EQ(a.report.W, b.report.W);
    ASSERT_EQ(a.elements.size(), b.elements.size());
    for (std::size_t i : {std::size_t{0}, a.elements.size() / 2,
                          a.elements.size() - 1}) {
        EXPECT_EQ(a.elements[i].weight, b.elements[i].weight);
        EXPECT_EQ(a.elements[i].omega, b.elements[i].omega);
    }
}
