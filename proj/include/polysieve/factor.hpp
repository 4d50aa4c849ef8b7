#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "polysieve/errors.hpp"
#include "polysieve/int128.hpp"
#include "polysieve/primes.hpp"

// Complete factorization of 128-bit integers: trial division by small primes,
// then Brent-cycle Pollard rho on the certified-composite cofactors.
//
// Primality: deterministic Miller-Rabin below 2^64; above, Miller-Rabin over
// the first 13 prime bases plus a strong Lucas test with Selfridge
// parameters. The combination has no known counterexample anywhere, and the
// inputs here stay below 2^90.

namespace polysieve {

struct FactorPolicy {
    uint32_t trial_division_limit = 10000;
    uint64_t rho_iteration_limit = uint64_t(1) << 26;
    int rho_retry_limit = 24;
};

namespace detail {

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(i128 a, u128 n) {
    u128 ua;
    int sign = 1;
    if (a < 0) {
        ua = static_cast<u128>(-a);
        if ((n & 3) == 3) sign = -sign;  // (-1/n) = -1 when n = 3 mod 4
    } else {
        ua = static_cast<u128>(a);
    }
    ua %= n;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            u128 r = n & 7;
            if (r == 3 || r == 5) sign = -sign;  // (2/n)
        }
        std::swap(ua, n);
        if ((ua & 3) == 3 && (n & 3) == 3) sign = -sign;  // reciprocity
        ua %= n;
    }
    return n == 1 ? sign : 0;
}

// Strong Lucas probable-prime test, Selfridge parameter selection.
// Pre: n odd, n > 2, n not a perfect square, gcd(n, small primes) checked.
inline bool strong_lucas_prp(u128 n) {
    i128 D = 5;
    while (true) {
        int j = jacobi(D, n);
        if (j == 0) return false;  // D shares a factor with n
        if (j == -1) break;
        D = D > 0 ? -(D + 2) : -(D - 2);
    }
    // P = 1, Q = (1 - D)/4
    i128 Qi = (1 - D) / 4;
    u128 Q = Qi >= 0 ? static_cast<u128>(Qi) % n
                     : n - static_cast<u128>(-Qi) % n;

    u128 d = n + 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }

    // Binary chain for U_d, V_d (mod n) with P = 1.
    u128 U = 0, V = 2, Qk = 1;
    u128 Dmod = D >= 0 ? static_cast<u128>(D) % n : n - static_cast<u128>(-D) % n;
    int bits = 0;
    for (u128 t = d; t != 0; t >>= 1) ++bits;
    auto halve = [&](u128 v) {  // v/2 mod n for odd n
        return (v & 1) ? ((v + n) >> 1) % n : v >> 1;
    };
    for (int i = bits - 1; i >= 0; --i) {
        // doubling: U_{2m} = U_m V_m, V_{2m} = V_m^2 - 2 Q^m
        U = mulmod(U, V, n);
        V = mulmod(V, V, n);
        V = (V + n - (2 * Qk) % n) % n;
        Qk = mulmod(Qk, Qk, n);
        if ((d >> i) & 1) {
            // increment: U_{m+1} = (U + V)/2, V_{m+1} = (D U + V)/2, with P=1
            u128 U2 = halve((U + V) % n);
            u128 V2 = halve((mulmod(Dmod, U, n) + V) % n);
            U = U2;
            V = V2;
            Qk = mulmod(Qk, Q, n);
        }
    }
    if (U == 0 || V == 0) return true;
    for (int r = 1; r < s; ++r) {
        V = mulmod(V, V, n);
        V = (V + n - (2 * Qk) % n) % n;
        Qk = mulmod(Qk, Qk, n);
        if (V == 0) return true;
    }
    return false;
}

inline bool miller_rabin_u128(u128 n, u128 a) {
    a %= n;
    if (a == 0) return true;
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

inline bool is_prime(u128 n) {
    if (n < (u128(1) << 64)) return is_prime(static_cast<uint64_t>(n));
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                       29ull, 31ull, 37ull, 41ull}) {
        if (n % p == 0) return false;
    }
    u128 r = isqrt(n);
    if (r * r == n) return false;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                       29ull, 31ull, 37ull, 41ull}) {
        if (!detail::miller_rabin_u128(n, a)) return false;
    }
    return detail::strong_lucas_prp(n);
}

class Factorizer {
public:
    explicit Factorizer(FactorPolicy policy = {})
        : policy_(policy), small_primes_(primes_up_to(policy.trial_division_limit)) {}

    const FactorPolicy& policy() const { return policy_; }

    // Prime factorization of n >= 1, ascending, as (prime, exponent) pairs.
    std::vector<std::pair<u128, int>> factorize(u128 n) const {
        std::vector<std::pair<u128, int>> out;
        if (n <= 1) return out;
        for (uint32_t p : small_primes_) {
            if (static_cast<u128>(p) * p > n) break;
            if (n % p == 0) {
                int e = 0;
                while (n % p == 0) {
                    n /= p;
                    ++e;
                }
                out.emplace_back(p, e);
            }
        }
        if (n > 1) {
            std::vector<u128> stack{n};
            std::vector<u128> primes;
            while (!stack.empty()) {
                u128 m = stack.back();
                stack.pop_back();
                if (is_prime(m)) {
                    primes.push_back(m);
                    continue;
                }
                u128 d = rho_split(m);
                stack.push_back(d);
                stack.push_back(m / d);
            }
            std::sort(primes.begin(), primes.end());
            for (std::size_t i = 0; i < primes.size();) {
                std::size_t j = i;
                while (j < primes.size() && primes[j] == primes[i]) ++j;
                out.emplace_back(primes[i], static_cast<int>(j - i));
                i = j;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Omega(n): number of prime factors counted with multiplicity.
    int big_omega(u128 n) const {
        int total = 0;
        for (const auto& [p, e] : factorize(n)) total += e;
        return total;
    }

private:
    // One nontrivial factor of a composite m with no prime factor up to the
    // trial division limit. Brent cycle detection with gcds batched in blocks
    // of 128; on a degenerate block the walk is replayed step by step from
    // the block start.
    u128 rho_split(u128 m) const {
        // perfect squares defeat rho's random walk
        u128 root = isqrt(m);
        if (root * root == m) return root;
        bool small = m < (u128(1) << 64);
        for (int attempt = 0; attempt < policy_.rho_retry_limit; ++attempt) {
            u128 c = 1 + static_cast<u128>(attempt);
            auto step = [&](u128 v) {
                return small ? (mulmod(static_cast<uint64_t>(v), static_cast<uint64_t>(v),
                                       static_cast<uint64_t>(m)) +
                                c) %
                                   m
                             : (mulmod(v, v, m) + c) % m;
            };
            auto mul = [&](u128 a, u128 b) {
                return small ? static_cast<u128>(mulmod(static_cast<uint64_t>(a),
                                                        static_cast<uint64_t>(b),
                                                        static_cast<uint64_t>(m)))
                             : mulmod(a, b, m);
            };

            u128 y = 2 + static_cast<u128>(attempt);
            u128 x = y, ys = y, q = 1, g = 1;
            uint64_t cycle = 1, total = 0;
            const uint64_t limit = policy_.rho_iteration_limit;
            while (g == 1 && total < limit) {
                x = y;
                for (uint64_t i = 0; i < cycle; ++i) y = step(y);
                uint64_t done = 0;
                while (done < cycle && g == 1) {
                    ys = y;
                    uint64_t batch = std::min<uint64_t>(128, cycle - done);
                    for (uint64_t i = 0; i < batch; ++i) {
                        y = step(y);
                        u128 diff = x > y ? x - y : y - x;
                        q = mul(q, diff);
                    }
                    g = gcd(q, m);
                    done += batch;
                    total += batch;
                }
                cycle *= 2;
            }
            if (g == m) {
                g = 1;
                while (g == 1) {
                    ys = step(ys);
                    u128 diff = x > ys ? x - ys : ys - x;
                    g = gcd(diff, m);
                }
            }
            if (g != 1 && g != m) return g;
        }
        throw FactorizationFailure("pollard rho gave up on " + to_string(m));
    }

    FactorPolicy policy_;
    std::vector<uint32_t> small_primes_;
};

}  // namespace polysieve
