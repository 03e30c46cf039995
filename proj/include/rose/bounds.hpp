#pragma once

#include <optional>
#include <span>

#include "rose/types.hpp"

namespace rose {

struct CertificateResult {
    /// sum_i 1/(1 + e^{delta d_i})
    double sum_value = 0.0;
    bool satisfied = false;
    /// Smallest delta compatible with the inequality: the rose entropy of the displacements.
    double delta_lower_bound = 0.0;
    /// log(2k-1)/delta, some displacement must reach it. Empty when delta = 0.
    std::optional<double> max_displacement_bound;
};

CertificateResult certify(const GroupSample& sample, double tol = kCertificateTolerance);

/// Smallest last length l_k with sum over (priors, l_k) of 1/(1+e^{h l}) <= 1/2,
/// i.e. the l_k giving equality. Empty when the priors alone reach 1/2.
std::optional<double> exact_min_last_length(double h, std::span<const double> priors);

/// Two-loop closed form (1/h) log((e^{h l1} + 3)/(e^{h l1} - 1)).
double exact_min_second_length(double h, double l1);

struct AsymptoticBound {
    double value = 0.0;
    /// h * l1 >= 4: the formula gives no constraint.
    bool vacuous = false;
};

/// (1/h) log(4 / (h l1))
AsymptoticBound collar2_asymptotic(double h, double l1);

/// (-1/h) log(h l_1/4 - sum_{i=2}^{k-1} e^{-h l_i}) for priors sorted ascending.
/// Empty when the log argument is nonpositive. Throws on unsorted priors.
std::optional<double> collark_asymptotic(double h, std::span<const double> priors);

/// (1/h) log(1 / (h l1))
double bcgs_bound(double h, double l1);

struct HyperbolicCollar {
    /// sinh(l1/2) sinh(l2/2) > 1
    bool holds = false;
    double product = 0.0;
    /// 2 log(4 / l1)
    double expansion_bound = 0.0;
};

HyperbolicCollar hyperbolic_collar_check(double l1, double l2);

/// Exact and asymptotic bounds on the last loop given ascending priors.
CollarReport collar_report(double h, std::span<const double> priors);

}  // namespace rose
