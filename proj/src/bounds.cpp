#include "rose/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rose/entropy.hpp"
#include "rose/error.hpp"
#include "rose/logistic.hpp"

namespace rose {
namespace {

void require_positive(double value, const char* what) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValidationError(std::string(what) + " must be positive and finite");
    }
}

void require_priors(std::span<const double> priors) {
    if (priors.empty()) {
        throw ValidationError("need at least one prior length");
    }
    for (std::size_t i = 0; i < priors.size(); ++i) {
        if (!std::isfinite(priors[i]) || priors[i] <= 0.0) {
            throw ValidationError("nonpositive or non-finite prior length at index " +
                                  std::to_string(i));
        }
    }
}

}  // namespace

CertificateResult certify(const GroupSample& sample, double tol) {
    require_positive(tol, "tolerance");
    CertificateResult result;
    result.sum_value = theorem_sum(sample.displacements, sample.delta);
    result.satisfied = result.sum_value <= 0.5 + tol;
    result.delta_lower_bound = rose_entropy(sample.displacements).h;
    if (sample.delta > 0.0) {
        const double k = static_cast<double>(sample.displacements.rank());
        result.max_displacement_bound = std::log(2.0 * k - 1.0) / sample.delta;
    }
    return result;
}

std::optional<double> exact_min_last_length(double h, std::span<const double> priors) {
    require_positive(h, "h");
    require_priors(priors);

    // r = 1/2 - sum of logistic terms. The largest term (shortest prior) is
    // folded into 1/2 through tanh, which keeps r accurate when it is tiny.
    const auto shortest = std::min_element(priors.begin(), priors.end());
    double r = logistic_gap(h * *shortest);
    for (auto it = priors.begin(); it != priors.end(); ++it) {
        if (it != shortest) {
            r -= logistic_tail(h * *it);
        }
    }
    if (r <= 0.0) {
        return std::nullopt;
    }
    return (std::log1p(-r) - std::log(r)) / h;
}

double exact_min_second_length(double h, double l1) {
    require_positive(h, "h");
    require_positive(l1, "l1");
    const double growth = std::expm1(h * l1);
    return std::log((growth + 4.0) / growth) / h;
}

AsymptoticBound collar2_asymptotic(double h, double l1) {
    require_positive(h, "h");
    require_positive(l1, "l1");
    return {std::log(4.0 / (h * l1)) / h, h * l1 >= 4.0};
}

std::optional<double> collark_asymptotic(double h, std::span<const double> priors) {
    require_positive(h, "h");
    require_priors(priors);
    if (priors.size() < 2) {
        throw ValidationError("the k-loop asymptotic needs at least two prior lengths");
    }
    if (!std::is_sorted(priors.begin(), priors.end())) {
        throw ValidationError("prior lengths must be sorted ascending");
    }
    double t = h * priors.front() / 4.0;
    for (std::size_t i = 1; i < priors.size(); ++i) {
        t -= std::exp(-h * priors[i]);
    }
    if (t <= 0.0) {
        return std::nullopt;
    }
    return -std::log(t) / h;
}

double bcgs_bound(double h, double l1) {
    require_positive(h, "h");
    require_positive(l1, "l1");
    return std::log(1.0 / (h * l1)) / h;
}

HyperbolicCollar hyperbolic_collar_check(double l1, double l2) {
    require_positive(l1, "l1");
    require_positive(l2, "l2");
    const double product = std::sinh(0.5 * l1) * std::sinh(0.5 * l2);
    return {product > 1.0, product, 2.0 * std::log(4.0 / l1)};
}

CollarReport collar_report(double h, std::span<const double> priors) {
    require_positive(h, "h");
    require_priors(priors);
    if (!std::is_sorted(priors.begin(), priors.end())) {
        throw ValidationError("prior lengths must be sorted ascending");
    }

    CollarReport report;
    report.h = h;
    report.prior_lengths.assign(priors.begin(), priors.end());
    report.exact_bound = exact_min_last_length(h, priors);

    if (priors.size() == 1) {
        const auto asymptotic = collar2_asymptotic(h, priors.front());
        report.asymptotic_bound = asymptotic.value;
        report.asymptotic_vacuous = asymptotic.vacuous;
        report.comparison_bcgs = bcgs_bound(h, priors.front());
    } else {
        report.asymptotic_bound = collark_asymptotic(h, priors);
    }

    if (report.exact_bound) {
        std::vector<double> all(priors.begin(), priors.end());
        all.push_back(*report.exact_bound);
        report.plug_back_residual = theorem_sum(all, h) - 0.5;
        if (report.asymptotic_bound) {
            report.margin = *report.exact_bound - *report.asymptotic_bound;
        }
    }
    return report;
}

}  // namespace rose
