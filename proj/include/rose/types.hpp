#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rose {

inline constexpr double kEntropyTolerance = 1e-12;
inline constexpr double kSpectralTolerance = 1e-10;
inline constexpr double kCertificateTolerance = 1e-12;

/// Edge lengths a_1..a_k of a rose graph (a wedge of k circles).
///
/// Only constructible through validate_lengths, so every instance holds a
/// nonempty list of strictly positive finite values. Order and duplicates are
/// preserved.
class RoseLengths {
public:
    std::span<const double> values() const noexcept { return values_; }
    std::size_t rank() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double min() const;
    double max() const;

    friend bool operator==(const RoseLengths&, const RoseLengths&) = default;

private:
    explicit RoseLengths(std::vector<double> values) : values_(std::move(values)) {}
    friend RoseLengths validate_lengths(std::span<const double> raw);

    std::vector<double> values_;
};

/// Throws ValidationError naming the first offending index.
RoseLengths validate_lengths(std::span<const double> raw);

enum class EntropyMethod { degenerate, closed_form_root, spectral };

const char* to_string(EntropyMethod method) noexcept;

struct EntropySolution {
    double h = 0.0;
    /// theorem_sum(lengths, h) - 1/2
    double residual = 0.0;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
    int iterations = 0;
    EntropyMethod method = EntropyMethod::degenerate;

    friend bool operator==(const EntropySolution&, const EntropySolution&) = default;
};

/// Displacements d(x, g_i x) of the free generators together with the
/// critical exponent of the group they generate.
struct GroupSample {
    RoseLengths displacements;
    double delta;

    friend bool operator==(const GroupSample&, const GroupSample&) = default;
};

GroupSample make_group_sample(std::span<const double> displacements, double delta);

struct CollarReport {
    double h = 0.0;
    std::vector<double> prior_lengths;
    /// Empty when the priors alone already push the sum past 1/2.
    std::optional<double> exact_bound;
    /// Empty when the asymptotic formula's log argument is nonpositive.
    std::optional<double> asymptotic_bound;
    /// Two-loop asymptotic with h * l1 >= 4: still computed, but no constraint.
    bool asymptotic_vacuous = false;
    /// Only defined for two loops.
    std::optional<double> comparison_bcgs;
    std::optional<double> margin;
    /// Theorem sum over priors plus exact_bound, minus 1/2.
    std::optional<double> plug_back_residual;

    friend bool operator==(const CollarReport&, const CollarReport&) = default;
};

}  // namespace rose
