#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "polysieve/errors.hpp"

// Adaptive Gauss-Kronrod quadrature and Brent root finding.
//
// integrate() keeps a worst-first heap of subintervals and bisects until the
// summed error estimate meets max(abs_tol, rel_tol * |integral|). Nodes are
// strictly interior, so integrable endpoint singularities (log, mild powers)
// converge by geometric refinement toward the endpoint without ever
// evaluating there.

namespace polysieve {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_depth = 60;
};

struct Bracket {
    double lo;
    double hi;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss on [-1,1].
// Positive abscissae; the rule is symmetric. Odd indices are the Gauss-7
// subset, whose weights are in gk_weights_gauss.
inline constexpr double gk_abscissae[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};

inline constexpr double gk_weights_kronrod[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr double gk_weights_gauss[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEstimate {
    double integral;
    double error;
};

template <class F>
PanelEstimate gauss_kronrod_15(F& g, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    auto sample = [&](double t) {
        double v = g(t);
        if (!std::isfinite(v)) {
            throw NonFinite("integrand returned a non-finite value at t = " +
                            std::to_string(t));
        }
        return v;
    };

    double fc = sample(mid);
    double kronrod = gk_weights_kronrod[7] * fc;
    double gauss = gk_weights_gauss[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = half * gk_abscissae[i];
        double pair = sample(mid - dx) + sample(mid + dx);
        kronrod += gk_weights_kronrod[i] * pair;
        if (i & 1) gauss += gk_weights_gauss[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    // |K15 - G7| overestimates the Kronrod error for smooth integrands, which
    // only costs a few extra bisections; no resasc-style rescaling needed.
    return {kronrod, std::abs(kronrod - gauss)};
}

inline void validate(const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
        throw InvalidParameters("quadrature tolerances must be positive");
    }
    if (spec.max_depth < 10) {
        throw InvalidParameters("quadrature max_depth must be at least 10");
    }
}

}  // namespace detail

// Integral of g over [a, b], a <= b. Returns exactly 0 when a == b.
template <class F>
double integrate(F&& g, double a, double b, const QuadratureSpec& spec = {}) {
    detail::validate(spec);
    if (!std::isfinite(a) || !std::isfinite(b) || !(a <= b)) {
        throw DomainError("integrate requires finite bounds with a <= b");
    }
    if (a == b) return 0.0;

    struct Node {
        double a, b, integral, error;
        int depth;
    };
    // max-heap on error; ties broken by left endpoint so the refinement order
    // (and therefore the result bit pattern) is deterministic
    auto worse = [](const Node& x, const Node& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    };

    std::vector<Node> heap;
    auto first = detail::gauss_kronrod_15(g, a, b);
    heap.push_back({a, b, first.integral, first.error, 0});
    double total = first.integral;
    double total_error = first.error;

    constexpr std::size_t max_nodes = 200000;
    while (true) {
        double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (total_error <= tol) break;

        std::pop_heap(heap.begin(), heap.end(), worse);
        Node cur = heap.back();
        heap.pop_back();
        if (cur.depth >= spec.max_depth) {
            throw NonConvergence("integrate: max_depth " +
                                 std::to_string(spec.max_depth) +
                                 " reached with error estimate " +
                                 std::to_string(total_error));
        }
        if (heap.size() + 2 > max_nodes) {
            throw NonConvergence("integrate: subdivision limit exceeded");
        }

        double mid = 0.5 * (cur.a + cur.b);
        auto left = detail::gauss_kronrod_15(g, cur.a, mid);
        auto right = detail::gauss_kronrod_15(g, mid, cur.b);
        total += left.integral + right.integral - cur.integral;
        total_error += left.error + right.error - cur.error;
        heap.push_back({cur.a, mid, left.integral, left.error, cur.depth + 1});
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back({mid, cur.b, right.integral, right.error, cur.depth + 1});
        std::push_heap(heap.begin(), heap.end(), worse);
    }
    return total;
}

// Root of g on a sign-changing bracket, by Brent's method: bisection,
// secant, and inverse quadratic steps, whichever is safe. The result is
// inside the bracket and within tol of a sign change.
template <class F>
double find_root(F&& g, Bracket bracket, double tol = 1e-12) {
    if (!(tol > 0.0)) throw InvalidParameters("find_root: tol must be positive");
    if (!std::isfinite(bracket.lo) || !std::isfinite(bracket.hi) ||
        !(bracket.lo < bracket.hi)) {
        throw InvalidParameters("find_root: bracket requires lo < hi");
    }

    auto eval = [&](double t) {
        double v = g(t);
        if (!std::isfinite(v)) {
            throw NonFinite("find_root: function returned a non-finite value at t = " +
                            std::to_string(t));
        }
        return v;
    };

    double a = bracket.lo, b = bracket.hi;
    double fa = eval(a), fb = eval(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NoSignChange("find_root: same sign at both ends of [" +
                           std::to_string(a) + ", " + std::to_string(b) + "]");
    }

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                      0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc;
                double rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                                   std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = eval(b);
    }
    throw NonConvergence("find_root: iteration limit reached");
}

}  // namespace polysieve
