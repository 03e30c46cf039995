#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rose/error.hpp"

namespace rose {

struct RootResult {
    double root = 0.0;
    double value = 0.0;
    double low = 0.0;
    double high = 0.0;
    int iterations = 0;
};

/// Brent's method on a sign-changing bracket [lo, hi].
///
/// Stops when |f(root)| <= ftol or the bracket has shrunk to machine
/// resolution. The returned [low, high] always contains the root.
template <class F>
RootResult find_bracketed_root(F&& f, double lo, double hi, double ftol, int max_iter = 200) {
    constexpr double eps = std::numeric_limits<double>::epsilon();

    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);

    if (std::abs(fa) <= ftol && std::abs(fa) <= std::abs(fb)) {
        return {a, fa, a, a, 0};
    }
    if (std::abs(fb) <= ftol) {
        return {b, fb, b, b, 0};
    }
    if ((fa > 0.0) == (fb > 0.0)) {
        throw ValidationError("root bracket does not change sign");
    }

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;

    for (int iter = 1; iter <= max_iter; ++iter) {
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

        const double tol1 = 2.0 * eps * std::abs(b) + std::numeric_limits<double>::min();
        const double half = 0.5 * (c - b);
        if (std::abs(fb) <= ftol || std::abs(half) <= tol1) {
            return {b, fb, std::min(b, c), std::max(b, c), iter};
        }

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic interpolation, or secant when a == c
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            }
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * half * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }

        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, half);
        fb = f(b);
    }
    throw ConvergenceError("root finder did not converge within " + std::to_string(max_iter) +
                           " iterations");
}

}  // namespace rose
