#include "rose/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rose/error.hpp"
#include "rose/logistic.hpp"
#include "rose/root_find.hpp"

namespace rose {
namespace {

void require_positive(double value, const char* what) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValidationError(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

double theorem_sum(std::span<const double> lengths, double s) {
    if (!(s >= 0.0)) {
        throw ValidationError("exponent must be nonnegative");
    }
    double sum = 0.0;
    for (double a : lengths) {
        sum += logistic_tail(s * a);
    }
    return sum;
}

double theorem_sum(const RoseLengths& lengths, double s) { return theorem_sum(lengths.values(), s); }

std::pair<double, double> entropy_bracket(const RoseLengths& lengths) {
    const double growth = std::log(2.0 * static_cast<double>(lengths.rank()) - 1.0);
    return {growth / lengths.max(), growth / lengths.min()};
}

EntropySolution rose_entropy(const RoseLengths& lengths, double tol) {
    require_positive(tol, "tolerance");
    if (lengths.rank() == 1) {
        return {0.0, theorem_sum(lengths, 0.0) - 0.5, 0.0, 0.0, 0, EntropyMethod::degenerate};
    }
    const auto [lo, hi] = entropy_bracket(lengths);
    const auto residual = [&](double h) { return theorem_sum(lengths, h) - 0.5; };
    const auto root = find_bracketed_root(residual, lo, hi, tol);

    // Newton polish with the analytic slope -sum a_i t_i (1 - t_i); kept only
    // while it stays in the bracket and lowers the residual.
    double h = root.root;
    double value = root.value;
    for (int step = 0; step < 3 && value != 0.0; ++step) {
        double slope = 0.0;
        for (double a : lengths.values()) {
            const double t = logistic_tail(h * a);
            slope -= a * t * (1.0 - t);
        }
        const double next = h - value / slope;
        if (!(next >= root.low && next <= root.high)) break;
        const double next_value = residual(next);
        if (std::abs(next_value) >= std::abs(value)) break;
        h = next;
        value = next_value;
    }
    return {h, value, root.low, root.high, root.iterations, EntropyMethod::closed_form_root};
}

LimMatrix LimMatrix::from_entries(std::size_t order, std::vector<double> entries, double h) {
    if (order == 0 || entries.size() != order * order) {
        throw ValidationError("matrix entries do not match the declared order");
    }
    for (double v : entries) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw ValidationError("matrix entries must be strictly positive");
        }
    }
    return LimMatrix(order, std::move(entries), h);
}

LimMatrix lim_matrix(const RoseLengths& lengths, double h) {
    require_positive(h, "h");
    const std::size_t k = lengths.rank();
    std::vector<double> entries(k * k);
    for (std::size_t j = 0; j < k; ++j) {
        const double decay = std::exp(-h * lengths[j]);
        for (std::size_t i = 0; i < k; ++i) {
            entries[i * k + j] = (i == j ? 1.0 : 2.0) * decay;
        }
    }
    // Underflow for huge h*a would break positivity; the root finder never goes there.
    return LimMatrix(k, std::move(entries), h);
}

PerronResult perron(const LimMatrix& m, double tol, int max_iter) {
    require_positive(tol, "tolerance");
    const std::size_t k = m.order();
    std::vector<double> x(k, 1.0 / static_cast<double>(k));
    std::vector<double> y(k);

    for (int iter = 1; iter <= max_iter; ++iter) {
        double ratio_min = std::numeric_limits<double>::infinity();
        double ratio_max = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                acc += m(i, j) * x[j];
            }
            y[i] = acc;
            total += acc;
            const double ratio = acc / x[i];
            ratio_min = std::min(ratio_min, ratio);
            ratio_max = std::max(ratio_max, ratio);
        }

        double change = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            y[i] /= total;
            change = std::max(change, std::abs(y[i] - x[i]));
        }
        x.swap(y);

        if (change <= tol && ratio_max - ratio_min <= tol) {
            return {0.5 * (ratio_min + ratio_max), std::move(x), iter};
        }
    }
    throw ConvergenceError("power iteration did not converge within " + std::to_string(max_iter) +
                           " iterations");
}

EntropySolution lim_entropy(const RoseLengths& lengths, double tol) {
    require_positive(tol, "tolerance");
    if (lengths.rank() < 2) {
        throw ValidationError("spectral entropy needs at least two loops");
    }
    const double inner_tol = std::max(tol * 1e-3, 1e-14);
    const auto [lo, hi] = entropy_bracket(lengths);
    const auto root = find_bracketed_root(
        [&](double h) {
            return perron(lim_matrix(lengths, h), inner_tol).rho - 1.0;
        },
        lo, hi, tol);
    return {root.root, theorem_sum(lengths, root.root) - 0.5, root.low, root.high,
            root.iterations, EntropyMethod::spectral};
}

std::vector<double> positive_solution(const RoseLengths& lengths, double h, double tol) {
    auto result = perron(lim_matrix(lengths, h), std::min(tol * 1e-3, kSpectralTolerance));
    if (std::abs(result.rho - 1.0) > tol) {
        throw ValidationError("h is not the entropy of these lengths: spectral radius " +
                              std::to_string(result.rho));
    }
    return std::move(result.vector);
}

}  // namespace rose
