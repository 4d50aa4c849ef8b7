#pragma once

// Bundled reference tables for the almost-prime exponent computation: the
// tabulated small-degree optimum, the integer exponent row alongside the
// previously best known values, and named constants with check tolerances.
// Tests and the `reproduce` driver compare recomputed values against these.

namespace polysieve::reference {

// Optimal level beta0 and real exponent r for small degrees, to 4 decimals.
struct ExponentRow {
    int k;
    double beta0;
    double r_real;
};

inline constexpr ExponentRow small_k_rows[] = {
    {2, 0.6131, 3.9667},
    {3, 0.6968, 5.4803},
    {4, 0.7552, 6.8645},
    {5, 0.7969, 8.1510},
    {6, 0.8265, 9.3819},
};

// Integer exponents r(k): f(p) has at most r(k) prime factors for infinitely
// many primes p. r_int_previous is the best value known before this method.
struct IntegerRow {
    int k;
    double r_real_2dp;
    int r_int;
    int r_int_previous;
};

inline constexpr IntegerRow integer_rows[] = {
    {2, 3.96, 4, 5},
    {3, 5.48, 6, 6},
    {4, 6.86, 7, 8},
    {5, 8.15, 9, 10},
    {6, 9.38, 10, 11},
    {7, 10.58, 11, 12},
    {8, 11.74, 12, 14},
    {9, 12.89, 13, 15},
    {10, 14.02, 15, 16},
};

// Default integer exponent for degree k, or -1 when not tabulated.
inline constexpr int default_r_int(int k) {
    for (const auto& row : integer_rows) {
        if (row.k == k) return row.r_int;
    }
    return -1;
}

struct NamedValue {
    const char* name;
    double value;
    double tolerance;
};

// Derived constants of the optimization, checked by `reproduce constants`.
inline constexpr NamedValue constants[] = {
    {"delta0", 0.45804, 5e-5},
    {"f1_at_6", 0.99989, 5e-5},
    {"M1", 0.84218, 1e-5},
    {"M2", 0.17383, 2e-4},
    {"M3", 0.52979, 2e-4},
    {"M4", 5.57453, 1e-3},
    {"c1", 0.842101, 1e-4},
    {"c2", 0.712608, 2e-3},
    {"c", 1.18751, 1e-4},
};

// Spot values of the sifting functions, checked by `reproduce sieve-values`.
// Entries whose reference is an exact closed form carry tight tolerances.
struct SieveValueRef {
    const char* label;  // "<fn> <s>", parsed by the reproduce driver
    double reference;
    double tolerance;
};

inline constexpr SieveValueRef sieve_values[] = {
    {"F1 2.0", 1.781072417990198, 1e-12},      // e^gamma
    {"F1 3.0", 1.187381611993465, 1e-12},      // 2 e^gamma / 3
    {"f1 2.0", 0.0, 1e-15},
    {"f1 4.0", 0.978354022705928, 1e-9},       // e^gamma log 3 / 2
    {"f1 6.0", 0.99989, 5e-5},
    {"sigma2 2.0", 0.157618375843597, 1e-12},  // 1 / (2 e^{2 gamma})
    {"F2 2.0", 6.344437916250901, 1e-12},      // 2 e^{2 gamma}
    {"f2 4.0", 0.0, 1e-15},
    {"f2 6.0", 0.884398590245413, 1e-8},
};

}  // namespace polysieve::reference
