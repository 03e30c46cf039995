#pragma once

#include <cmath>

namespace rose {

/// 1 / (1 + e^x) without overflow: for x >= 0 the numerator and denominator
/// are rewritten in terms of e^{-x} so no intermediate exceeds 1.
inline double logistic_tail(double x) noexcept {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

/// 1/2 - 1/(1 + e^x) = tanh(x/2) / 2, accurate for tiny x.
inline double logistic_gap(double x) noexcept { return 0.5 * std::tanh(0.5 * x); }

}  // namespace rose
