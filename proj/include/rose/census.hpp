#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rose/types.hpp"

namespace rose {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::int64_t kDefaultTableCap = 10'000'000;

/// Nonnegative-denominator rational, kept in lowest terms.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const;

    /// floor(this * multiplier), exact.
    std::int64_t floor_times(std::int64_t multiplier) const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, std::int64_t n);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Exact edge lengths integer_lengths[i] / scale, stored gcd-reduced.
class ScaledLengths {
public:
    static ScaledLengths make(std::vector<std::int64_t> integer_lengths, std::int64_t scale);

    /// round(a_i * scale) for each length; every rounded value must be >= 1.
    static ScaledLengths rationalize(const RoseLengths& lengths, std::int64_t scale);

    const std::vector<std::int64_t>& integer_lengths() const noexcept { return integer_lengths_; }
    std::int64_t scale() const noexcept { return scale_; }
    std::size_t rank() const noexcept { return integer_lengths_.size(); }
    std::vector<double> as_doubles() const;

    friend bool operator==(const ScaledLengths&, const ScaledLengths&) = default;

private:
    ScaledLengths(std::vector<std::int64_t> integer_lengths, std::int64_t scale)
        : integer_lengths_(std::move(integer_lengths)), scale_(scale) {}

    std::vector<std::int64_t> integer_lengths_;
    std::int64_t scale_;
};

/// Orbit-ball counts N(R) of the covering tree at sampled radii.
struct CensusCurve {
    ScaledLengths lengths;
    std::vector<Rational> radii;
    std::vector<BigInt> counts;
};

/// Number of reduced words (empty word included) with weighted length <= radius.
BigInt exact_ball_count(const ScaledLengths& lengths, const Rational& radius,
                        std::int64_t table_cap = kDefaultTableCap);

/// N(R) at R = step, 2 step, ... up to r_max, from one sweep.
CensusCurve census_curve(const ScaledLengths& lengths, const Rational& r_max, const Rational& step,
                         std::int64_t table_cap = kDefaultTableCap);

/// (log N(R2) - log N(R1)) / (R2 - R1); both radii must be sampled on the curve.
double growth_rate_estimate(const CensusCurve& curve, const std::pair<Rational, Rational>& window);

/// Natural log of a positive big integer, to double precision.
double log_big(const BigInt& n);

}  // namespace rose
