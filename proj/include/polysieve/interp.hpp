#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polysieve/errors.hpp"
#include "polysieve/numerics.hpp"

namespace polysieve {

// Table of a cumulative integral T(x) = Int_a^x g(t) dt on a uniform grid.
//
// Node values come from per-step adaptive quadrature accumulated with
// compensated summation; node derivatives are g itself, so each cell is a
// cubic Hermite interpolant with exact endpoint data (O(h^4) error). For
// nondecreasing data the slopes are additionally clamped into the region
// that keeps the cubic monotone; with slopes taken from a nonnegative g the
// clamp never engages in practice, it only rules the overshoot case out.
class CumulativeTable {
public:
    CumulativeTable() = default;

    template <class G>
    static CumulativeTable build(G&& g, double a, double b, double max_step,
                                 QuadratureSpec spec) {
        if (!(b > a) || !(max_step > 0.0)) {
            throw InvalidParameters("CumulativeTable: requires b > a and max_step > 0");
        }
        CumulativeTable t;
        t.a_ = a;
        t.b_ = b;
        std::size_t cells =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / max_step)));
        t.h_ = (b - a) / static_cast<double>(cells);
        t.y_.resize(cells + 1);
        t.d_.resize(cells + 1);

        t.y_[0] = 0.0;
        t.d_[0] = g(a);
        double sum = 0.0, comp = 0.0;
        for (std::size_t i = 1; i <= cells; ++i) {
            double x0 = a + static_cast<double>(i - 1) * t.h_;
            double x1 = (i == cells) ? b : a + static_cast<double>(i) * t.h_;
            double inc = integrate(g, x0, x1, spec);
            double yy = inc - comp;
            double tt = sum + yy;
            comp = (tt - sum) - yy;
            sum = tt;
            t.y_[i] = sum;
            t.d_[i] = g(x1);
        }
        t.clamp_slopes();
        return t;
    }

    double operator()(double x) const {
        if (y_.empty()) throw std::logic_error("CumulativeTable: empty table");
        double u = (x - a_) / h_;
        auto n = static_cast<std::ptrdiff_t>(y_.size());
        auto i = static_cast<std::ptrdiff_t>(std::floor(u));
        i = std::clamp<std::ptrdiff_t>(i, 0, n - 2);
        double s = u - static_cast<double>(i);
        double y0 = y_[i], y1 = y_[i + 1];
        double m0 = d_[i] * h_, m1 = d_[i + 1] * h_;
        double s2 = s * s, s3 = s2 * s;
        return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * m0 +
               (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * m1;
    }

    double lo() const { return a_; }
    double hi() const { return b_; }
    std::size_t nodes() const { return y_.size(); }

private:
    void clamp_slopes() {
        std::size_t cells = y_.size() - 1;
        std::vector<double> secant(cells);
        for (std::size_t i = 0; i < cells; ++i) secant[i] = (y_[i + 1] - y_[i]) / h_;
        for (std::size_t i = 0; i <= cells; ++i) {
            double cap = 3.0 * std::min(i > 0 ? secant[i - 1] : secant[0],
                                        i < cells ? secant[i] : secant[cells - 1]);
            d_[i] = std::clamp(d_[i], 0.0, std::max(cap, 0.0));
        }
    }

    double a_ = 0.0, b_ = 0.0, h_ = 1.0;
    std::vector<double> y_, d_;
};

}  // namespace polysieve
