#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polysieve/constants.hpp"
#include "polysieve/errors.hpp"
#include "polysieve/factor.hpp"
#include "polysieve/int128.hpp"
#include "polysieve/primes.hpp"

// Local root densities of an integer polynomial f:
//
//   nu1(p) = #{ a in [1, p-1] : f(a) = 0 mod p }      (roots among units)
//   nu2(p) = #{ a in [0, p-1] : a f(a) = 0 mod p }    (roots of x f(x))
//
// both extended multiplicatively to squarefree moduli, plus the derived
// admissibility test, singular series, and Mertens-sum diagnostics.
//
// Root counting is by direct evaluation over all residues for small p and by
// deg gcd(x^p - x, f) over GF(p) beyond that; the two are property-tested
// against each other.

namespace polysieve {

class IntPolynomial {
public:
    // Coefficients ascending: c[0] + c[1] x + ... Requires degree >= 1,
    // positive leading coefficient, nonzero constant term.
    explicit IntPolynomial(std::vector<long long> coeffs) : c_(std::move(coeffs)) {
        while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
        if (c_.size() < 2) {
            throw InvalidParameters("polynomial must have degree >= 1");
        }
        if (c_.back() <= 0) {
            throw InvalidParameters("leading coefficient must be positive");
        }
        if (c_.front() == 0) {
            throw InvalidParameters("constant term must be nonzero");
        }
    }

    // Parses "c0,c1,...,ck" (ascending), e.g. "1,1,1" for x^2 + x + 1.
    static IntPolynomial parse(std::string_view text) {
        std::vector<long long> coeffs;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string_view tok = text.substr(
                pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
            while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
            while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
            long long v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw InvalidParameters("cannot parse coefficient '" + std::string(tok) +
                                        "'");
            }
            coeffs.push_back(v);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        return IntPolynomial(std::move(coeffs));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<long long>& coefficients() const { return c_; }

    long long content() const {
        unsigned long long g = 0;
        for (long long v : c_) {
            unsigned long long a = v < 0 ? 0ull - static_cast<unsigned long long>(v)
                                         : static_cast<unsigned long long>(v);
            while (a != 0) {
                unsigned long long t = g % a;
                g = a;
                a = t;
            }
        }
        return static_cast<long long>(g);
    }

    // f(x) by Horner in 128-bit arithmetic; throws Overflow if any step wraps.
    i128 eval_checked(uint64_t x) const {
        i128 acc = c_.back();
        i128 xi = static_cast<i128>(x);
        for (auto it = c_.rbegin() + 1; it != c_.rend(); ++it) {
            if (__builtin_mul_overflow(acc, xi, &acc) ||
                __builtin_add_overflow(acc, static_cast<i128>(*it), &acc)) {
                throw Overflow("polynomial value exceeds 128 bits at x = " +
                               std::to_string(x));
            }
        }
        return acc;
    }

    // f(a) mod p.
    uint64_t eval_mod(uint64_t a, uint64_t p) const {
        uint64_t acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            long long v = *it % static_cast<long long>(p);
            uint64_t vm = v < 0 ? static_cast<uint64_t>(v + static_cast<long long>(p))
                                : static_cast<uint64_t>(v);
            acc = (mulmod(acc, a, p) + vm) % p;
        }
        return acc;
    }

    // Coefficients reduced mod p, ascending, high zeros trimmed
    // (empty result means f vanishes identically mod p).
    std::vector<uint64_t> coefficients_mod(uint64_t p) const {
        std::vector<uint64_t> out;
        out.reserve(c_.size());
        for (long long v : c_) {
            long long r = v % static_cast<long long>(p);
            if (r < 0) r += static_cast<long long>(p);
            out.push_back(static_cast<uint64_t>(r));
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    }

    std::string coeff_string() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(c_[i]);
        }
        return s;
    }

    // Display form, highest degree first: "x^2 + x + 1".
    std::string to_string() const {
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            long long v = c_[i];
            if (v == 0) continue;
            if (!s.empty()) {
                s += v > 0 ? " + " : " - ";
                v = v > 0 ? v : -v;
            } else if (v < 0) {
                s += '-';
                v = -v;
            }
            if (i == 0 || v != 1) s += std::to_string(v);
            if (i >= 1) s += i == 1 ? "x" : "x^" + std::to_string(i);
        }
        return s;
    }

private:
    std::vector<long long> c_;
};

namespace detail {

// Dense polynomials over GF(p), ascending coefficients, no high zeros.
using PolyModP = std::vector<uint64_t>;

inline void poly_trim(PolyModP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a by monic b (deg b >= 1).
inline void poly_rem_monic(PolyModP& a, const PolyModP& b, uint64_t p) {
    while (a.size() >= b.size()) {
        uint64_t lead = a.back();
        std::size_t shift = a.size() - b.size();
        if (lead != 0) {
            for (std::size_t i = 0; i + 1 < b.size(); ++i) {
                uint64_t t = mulmod(lead, b[i], p);
                uint64_t& dst = a[shift + i];
                dst = dst >= t ? dst - t : dst + p - t;
            }
        }
        a.pop_back();
        poly_trim(a);
        if (a.size() < b.size()) break;
    }
}

inline PolyModP poly_mulmod(const PolyModP& a, const PolyModP& b, const PolyModP& f,
                            uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyModP prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
        }
    }
    poly_trim(prod);
    poly_rem_monic(prod, f, p);
    return prod;
}

inline PolyModP poly_pow_x(uint64_t e, const PolyModP& f, uint64_t p) {
    PolyModP result{1};
    PolyModP base{0, 1};
    poly_rem_monic(base, f, p);
    poly_trim(base);
    while (e != 0) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

inline PolyModP poly_monic(PolyModP a, uint64_t p) {
    poly_trim(a);
    if (a.empty()) return a;
    uint64_t inv = powmod(a.back(), p - 2, p);
    for (uint64_t& v : a) v = mulmod(v, inv, p);
    return a;
}

inline PolyModP poly_gcd(PolyModP a, PolyModP b, uint64_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        PolyModP bm = poly_monic(std::move(b), p);
        poly_rem_monic(a, bm, p);  // a := a mod b
        b = std::move(a);
        a = std::move(bm);
    }
    return poly_monic(std::move(a), p);
}

// Distinct roots of a nonzero f over GF(p) as deg gcd(x^p - x, f);
// x^p - x is the squarefree product of (x - a) over all residues a.
inline uint32_t count_distinct_roots(const PolyModP& fbar, uint64_t p) {
    PolyModP monic = poly_monic(fbar, p);
    if (monic.size() <= 1) return 0;
    PolyModP xp = poly_pow_x(p, monic, p);
    // xp - x
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = xp[1] >= 1 ? xp[1] - 1 : p - 1;
    poly_trim(xp);
    PolyModP g = poly_gcd(std::move(xp), monic, p);
    return g.empty() ? 0 : static_cast<uint32_t>(g.size() - 1);
}

}  // namespace detail

// nu1: roots of f among the units mod p. The direct_limit picks the strategy:
// exhaustive evaluation at or below it, gcd with x^p - x over GF(p) above.
inline uint32_t nu1(const IntPolynomial& f, uint64_t p, uint32_t direct_limit = 10000) {
    if (!is_prime(p)) {
        throw NotPrime("nu1: modulus " + std::to_string(p) + " is not prime");
    }
    std::vector<uint64_t> fbar = f.coefficients_mod(p);
    if (fbar.empty()) return static_cast<uint32_t>(p - 1);  // f = 0 mod p
    if (fbar.size() == 1) return 0;                         // nonzero constant
    if (p <= direct_limit) {
        uint32_t count = 0;
        for (uint64_t a = 1; a < p; ++a) {
            if (f.eval_mod(a, p) == 0) ++count;
        }
        return count;
    }
    uint32_t roots = detail::count_distinct_roots(fbar, p);
    if (fbar[0] == 0) --roots;  // a = 0 is a root of f but not a unit
    return roots;
}

// nu2: roots of x f(x) among all residues mod p. Since a = 0 always
// qualifies and any unit a qualifies exactly when f(a) = 0, nu2 = nu1 + 1.
inline uint32_t nu2(const IntPolynomial& f, uint64_t p, uint32_t direct_limit = 10000) {
    return nu1(f, p, direct_limit) + 1;
}

enum class NuKind { nu1, nu2 };

// Multiplicative extension to squarefree d (d = 1 gives 1).
inline uint64_t nu_squarefree(const IntPolynomial& f, NuKind kind, uint64_t d) {
    if (d == 0) throw InvalidParameters("nu_squarefree: d must be positive");
    if (d == 1) return 1;
    static const Factorizer factorizer;
    uint64_t result = 1;
    for (const auto& [prime, exp] : factorizer.factorize(d)) {
        if (exp > 1) {
            throw NotSquarefree("nu_squarefree: " + std::to_string(d) +
                                " is divisible by the square of " + to_string(prime));
        }
        auto p = static_cast<uint64_t>(prime);
        result *= kind == NuKind::nu1 ? nu1(f, p) : nu2(f, p);
    }
    return result;
}

namespace detail {

// The primes with nu1(p) = p - 1, i.e. the admissibility failures. Finite
// and cheap: for p >= k + 3 a nonvanishing f mod p has at most k < p - 1
// roots, so only p <= k + 2 and primes dividing the content can fail.
inline std::vector<uint64_t> zero_density_primes(const IntPolynomial& f) {
    std::vector<uint64_t> candidates;
    for (uint32_t p : primes_up_to(static_cast<uint64_t>(f.degree()) + 2)) {
        candidates.push_back(p);
    }
    long long content = f.content();
    if (content > 1) {
        static const Factorizer factorizer;
        for (const auto& [prime, exp] : factorizer.factorize(static_cast<u128>(content))) {
            candidates.push_back(static_cast<uint64_t>(prime));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    std::vector<uint64_t> out;
    for (uint64_t p : candidates) {
        if (nu1(f, p) == p - 1) out.push_back(p);
    }
    return out;
}

struct SeriesLog {
    double log_value;
    bool zero;
};

// log of prod_{p <= p_limit, p not excluded} (1 - nu1(p)/(p-1)) / (1 - 1/p).
// For admissible f this is the truncated singular series; the excluded set
// lets callers deflate away zero factors symmetrically.
inline SeriesLog singular_series_log(const IntPolynomial& f, uint64_t p_limit,
                                     const std::vector<uint64_t>& exclude) {
    for (uint64_t p : zero_density_primes(f)) {
        if (p <= p_limit &&
            !std::binary_search(exclude.begin(), exclude.end(), p)) {
            return {0.0, true};
        }
    }
    double sum = 0.0, comp = 0.0;
    for_each_prime(1, p_limit, [&](uint64_t p) {
        if (std::binary_search(exclude.begin(), exclude.end(), p)) return;
        auto v = static_cast<double>(nu1(f, p));
        double term = std::log1p(-v / (static_cast<double>(p) - 1.0)) -
                      std::log1p(-1.0 / static_cast<double>(p));
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    });
    return {sum, false};
}

}  // namespace detail

struct Admissibility {
    bool admissible;
    uint64_t witness;  // smallest failing prime; 0 when admissible
};

// f is admissible when nu1(p) < p - 1 for every prime p, so that no fixed
// prime divides f(a) for all unit residues a.
inline Admissibility is_admissible(const IntPolynomial& f) {
    auto failures = detail::zero_density_primes(f);
    if (failures.empty()) return {true, 0};
    return {false, failures.front()};
}

struct SingularSeries {
    double value;       // truncated Euler product
    double tail_bound;  // sum over (p_limit, 2 p_limit] of (k+1)/p
    uint64_t p_limit;
};

// Truncated singular series prod_p (1 - nu1(p)/(p-1)) (1 - 1/p)^{-1}, which
// equals 2 prod_{p>2} (...) for admissible f (admissibility forces
// nu1(2) = 0). Returns 0 when some prime has nu1(p) = p - 1. The reported
// tail heuristic bounds |log| of the omitted factors over a doubling window.
inline SingularSeries singular_series(const IntPolynomial& f, uint64_t p_limit) {
    if (p_limit < 3) throw InvalidParameters("singular_series: p_limit must be >= 3");
    auto sl = detail::singular_series_log(f, p_limit, {});
    double tail = 0.0;
    double k1 = static_cast<double>(f.degree()) + 1.0;
    for_each_prime(p_limit, 2 * p_limit,
                   [&](uint64_t p) { tail += k1 / static_cast<double>(p); });
    return {sl.zero ? 0.0 : std::exp(sl.log_value), tail, p_limit};
}

struct MertensReport {
    double nu1_sum_residual;   // sum_{p<=x} nu1(p) log p/(p-1)  -  log x
    double nu2_sum_residual;   // sum_{p<=x} nu2(p) log p/p      -  2 log x
    double nu1_product_ratio;  // prod (1-nu1/(p-1)) * log x / (e^-g S)
    double nu2_product_ratio;  // prod (1-nu2/p) * (log x)^2 / (e^-2g S)
    double singular_series;    // truncated series used in the ratios
    uint64_t series_p_limit;
    uint32_t excluded_primes;  // zero-density primes cancelled from both sides
};

// Finite-x diagnostics for the local-density sums and products. The product
// ratios approach 1 as x grows when f is admissible; primes with
// nu1(p) = p - 1 would zero both a product and the series, so they are
// cancelled from the two sides symmetrically and counted.
inline MertensReport mertens_report(const IntPolynomial& f, uint64_t x,
                                    std::optional<double> series_hint = {}) {
    if (x < 100) throw InvalidParameters("mertens_report: x must be >= 100");
    std::vector<uint64_t> excl = detail::zero_density_primes(f);

    struct Kahan {
        double sum = 0.0, comp = 0.0;
        void add(double v) {
            double y = v - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    };
    Kahan s1, s2, lv1, lv2;
    uint32_t excluded = 0;
    for_each_prime(1, x, [&](uint64_t p) {
        auto v1 = static_cast<double>(nu1(f, p));
        double v2 = v1 + 1.0;
        double pd = static_cast<double>(p);
        double lp = std::log(pd);
        s1.add(v1 * lp / (pd - 1.0));
        s2.add(v2 * lp / pd);
        if (std::binary_search(excl.begin(), excl.end(), p)) {
            ++excluded;
            return;
        }
        lv1.add(std::log1p(-v1 / (pd - 1.0)));
        lv2.add(std::log1p(-v2 / pd));
    });

    uint64_t p_limit = std::clamp<uint64_t>(10 * x, 1000000, 10000000);
    double series_log;
    if (series_hint.has_value() && excl.empty()) {
        if (!(*series_hint > 0.0)) {
            throw InvalidParameters("mertens_report: series hint must be positive");
        }
        series_log = std::log(*series_hint);
        p_limit = 0;  // supplied by caller
    } else {
        auto sl = detail::singular_series_log(f, p_limit, excl);
        series_log = sl.log_value;  // zero factors are all excluded
    }

    double lx = std::log(static_cast<double>(x));
    return {
        s1.sum - lx,
        s2.sum - 2.0 * lx,
        std::exp(lv1.sum + euler_gamma - series_log) * lx,
        std::exp(lv2.sum + 2.0 * euler_gamma - series_log) * lx * lx,
        std::exp(series_log),
        p_limit,
        excluded,
    };
}

// Rational root p/q of f (q | leading, p | constant), if any; used by the
// front end to reject detectably reducible inputs of degree >= 2. Candidates
// whose exact evaluation would overflow 128 bits are skipped.
inline std::optional<std::pair<long long, long long>> rational_root(
    const IntPolynomial& f) {
    static const Factorizer factorizer;
    auto divisors = [&](long long v) {
        unsigned long long a =
            v < 0 ? 0ull - static_cast<unsigned long long>(v)
                  : static_cast<unsigned long long>(v);
        std::vector<unsigned long long> out{1};
        for (const auto& [prime, exp] : factorizer.factorize(static_cast<u128>(a))) {
            std::size_t n = out.size();
            u128 pe = 1;
            for (int e = 1; e <= exp; ++e) {
                pe *= prime;
                for (std::size_t i = 0; i < n; ++i) {
                    u128 d = pe * out[i];
                    if (d <= 0xffffffffffffffffull) {
                        out.push_back(static_cast<unsigned long long>(d));
                    }
                }
            }
        }
        return out;
    };

    const auto& c = f.coefficients();
    auto nums = divisors(c.front());
    auto dens = divisors(c.back());
    for (unsigned long long den : dens) {
        for (unsigned long long num : nums) {
            unsigned long long g = std::gcd(num, den);
            long long nn = static_cast<long long>(num / g);
            long long dd = static_cast<long long>(den / g);
            for (long long sign : {1ll, -1ll}) {
                // sum c_i (sign*nn)^i dd^{k-i}, exact in 128 bits
                i128 acc = 0;
                bool overflow = false;
                for (int i = f.degree(); i >= 0; --i) {
                    if (__builtin_mul_overflow(acc, static_cast<i128>(sign * nn), &acc)) {
                        overflow = true;
                        break;
                    }
                    i128 term = c[i];
                    for (int j = 0; j < f.degree() - i; ++j) {
                        if (__builtin_mul_overflow(term, static_cast<i128>(dd), &term)) {
                            overflow = true;
                            break;
                        }
                    }
                    if (overflow ||
                        __builtin_add_overflow(acc, term, &acc)) {
                        overflow = true;
                        break;
                    }
                }
                if (!overflow && acc == 0) {
                    return std::make_pair(sign * nn, dd);
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace polysieve

