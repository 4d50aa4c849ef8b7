#pragma once

#include <cstdint>
#include <string>

#include "polysieve/errors.hpp"

namespace polysieve {

using u128 = unsigned __int128;
using i128 = __int128;

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    int i = 40;
    while (v != 0) {
        buf[--i] = static_cast<char>('0' + static_cast<unsigned>(v % 10));
        v /= 10;
    }
    return std::string(buf + i, buf + 40);
}

inline std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
    return to_string(static_cast<u128>(v));
}

inline double to_double(u128 v) { return static_cast<double>(v); }

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = m > 1 ? 1 % m : 0;
    base %= m;
    while (exp != 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Shift-and-add product mod m; requires m < 2^127 so the doubling never wraps.
inline u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m;
    u128 r = 0;
    while (b != 0) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a <<= 1;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

inline u128 powmod(u128 base, u128 exp, u128 m) {
    u128 r = m > 1 ? 1 % m : 0;
    base %= m;
    while (exp != 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline u128 gcd(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Floor square root by Newton iteration from a safe overestimate.
inline u128 isqrt(u128 n) {
    if (n == 0) return 0;
    u128 x = n;
    u128 y = (x + 1) >> 1;
    while (y < x) {
        x = y;
        y = (x + n / x) >> 1;
    }
    return x;
}

}  // namespace polysieve
