#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "polysieve/errors.hpp"
#include "polysieve/int128.hpp"

namespace polysieve {

// Simple sieve of Eratosthenes; fine for bounds up to a few times 10^8.
inline std::vector<uint32_t> primes_up_to(uint64_t n) {
    std::vector<uint32_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (uint64_t i = 2; i * i <= n; ++i) {
        if (composite[i]) continue;
        for (uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    for (uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) out.push_back(static_cast<uint32_t>(i));
    }
    return out;
}

// Deterministic Miller-Rabin for 64-bit inputs (the standard 12-base set).
inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                       29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                       29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Visits every prime p with lo < p <= hi, ascending, via a segmented sieve.
template <class Fn>
void for_each_prime(uint64_t lo, uint64_t hi, Fn&& fn) {
    if (hi <= 1 || hi <= lo) return;
    uint64_t root = 1;
    while ((root + 1) * (root + 1) <= hi) ++root;
    std::vector<uint32_t> base = primes_up_to(root);

    constexpr uint64_t segment = 1u << 20;
    std::vector<uint8_t> flags(segment);
    uint64_t start = lo + 1 < 2 ? 2 : lo + 1;
    for (uint64_t left = start; left <= hi; left += segment) {
        uint64_t right = left + segment - 1 < hi ? left + segment - 1 : hi;
        uint64_t len = right - left + 1;
        std::fill(flags.begin(), flags.begin() + len, 1);
        for (uint32_t p : base) {
            uint64_t pp = p;
            uint64_t first = ((left + pp - 1) / pp) * pp;
            if (first < pp * pp) first = pp * pp;
            for (uint64_t j = first; j <= right; j += pp) flags[j - left] = 0;
        }
        for (uint64_t i = 0; i < len; ++i) {
            if (flags[i]) fn(left + i);
        }
    }
}

// Number of primes in (lo, hi].
inline uint64_t prime_count(uint64_t lo, uint64_t hi) {
    uint64_t n = 0;
    for_each_prime(lo, hi, [&](uint64_t) { ++n; });
    return n;
}

}  // namespace polysieve
