#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rose/types.hpp"

namespace rose {

/// Sum over i of 1/(1 + e^{s a_i}). Strictly decreasing in s, equal to k/2 at 0.
double theorem_sum(const RoseLengths& lengths, double s);

/// Same sum over raw values; callers guarantee positivity.
double theorem_sum(std::span<const double> lengths, double s);

/// Analytic bracket [log(2k-1)/max a, log(2k-1)/min a] for the entropy.
std::pair<double, double> entropy_bracket(const RoseLengths& lengths);

/// Volume entropy of the rose: the unique h > 0 with theorem_sum(h) = 1/2.
/// For k = 1 the growth is linear and h = 0 (method degenerate).
EntropySolution rose_entropy(const RoseLengths& lengths, double tol = kEntropyTolerance);

/// Coefficient matrix of the positive-solution system at entropy candidate h:
/// m[i][j] = (i == j ? 1 : 2) * e^{-h a_j}.
class LimMatrix {
public:
    std::size_t order() const noexcept { return order_; }
    double h() const noexcept { return h_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

    /// Arbitrary positive square matrix, row-major.
    static LimMatrix from_entries(std::size_t order, std::vector<double> entries, double h = 0.0);

    friend LimMatrix lim_matrix(const RoseLengths& lengths, double h);

private:
    LimMatrix(std::size_t order, std::vector<double> entries, double h)
        : order_(order), h_(h), entries_(std::move(entries)) {}

    std::size_t order_;
    double h_;
    std::vector<double> entries_;
};

LimMatrix lim_matrix(const RoseLengths& lengths, double h);

struct PerronResult {
    double rho = 0.0;
    /// Positive eigenvector normalized to unit sum.
    std::vector<double> vector;
    int iterations = 0;
};

/// Power iteration from the uniform vector. Converged once the sup-norm
/// change of the normalized iterate and the Collatz-Wielandt bracket
/// min_i (Mx)_i/x_i <= rho <= max_i (Mx)_i/x_i are both within tol.
PerronResult perron(const LimMatrix& m, double tol = kSpectralTolerance,
                    int max_iter = 1'000'000);

inline double spectral_radius(const LimMatrix& m, double tol = kSpectralTolerance) {
    return perron(m, tol).rho;
}

/// Entropy as the h where the Perron root of lim_matrix(lengths, h) is 1.
/// Requires k >= 2. tol applies to |rho - 1|.
EntropySolution lim_entropy(const RoseLengths& lengths, double tol = kSpectralTolerance);

/// Positive solution x (unit sum) of the system at the entropy h.
/// Throws ValidationError when |rho - 1| > tol, i.e. h is not the entropy.
std::vector<double> positive_solution(const RoseLengths& lengths, double h, double tol = 1e-8);

}  // namespace rose
