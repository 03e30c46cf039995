#include "rose/census.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rose/error.hpp"

namespace rose {
namespace {

__extension__ typedef __int128 Int128;

// Reduced-word counts by exact integer weight t, split by last letter.
// Letter 2i is generator i, letter 2i + 1 its inverse, so inverse(g) = g ^ 1.
// Only the last max(integer_lengths) layers are held in memory.
class LayerSweep {
public:
    explicit LayerSweep(const std::vector<std::int64_t>& weights)
        : weights_(weights),
          letters_(2 * weights.size()),
          depth_(static_cast<std::size_t>(*std::max_element(weights.begin(), weights.end())) + 1),
          ending_(depth_, std::vector<BigInt>(letters_)),
          layer_total_(depth_) {
        layer_total_[0] = 1;
        cumulative_ = 1;
    }

    // Advances to weight t + 1; returns N(t + 1).
    const BigInt& step() {
        ++t_;
        const std::size_t slot = static_cast<std::size_t>(t_) % depth_;
        BigInt total = 0;
        for (std::size_t g = 0; g < letters_; ++g) {
            const std::int64_t w = weights_[g / 2];
            BigInt count = 0;
            if (t_ == w) {
                count = 1;
            } else if (t_ > w) {
                const std::size_t prev = static_cast<std::size_t>(t_ - w) % depth_;
                // every word of weight t - w not ending in inverse(g) extends by g
                count = layer_total_[prev] - ending_[prev][g ^ 1U];
            }
            total += count;
            ending_[slot][g] = std::move(count);
        }
        layer_total_[slot] = total;
        cumulative_ += total;
        return cumulative_;
    }

    std::int64_t weight() const noexcept { return t_; }
    const BigInt& cumulative() const noexcept { return cumulative_; }

private:
    const std::vector<std::int64_t>& weights_;
    std::size_t letters_;
    std::size_t depth_;
    std::vector<std::vector<BigInt>> ending_;
    std::vector<BigInt> layer_total_;
    BigInt cumulative_;
    std::int64_t t_ = 0;
};

std::int64_t checked_table_size(const ScaledLengths& lengths, const Rational& radius,
                                std::int64_t table_cap) {
    if (radius.num() < 0) {
        throw ValidationError("radius must be nonnegative");
    }
    const std::int64_t steps = radius.floor_times(lengths.scale());
    if (steps > table_cap) {
        throw ValidationError("radius " + radius.to_string() + " needs " + std::to_string(steps) +
                              " layers, above the table-size cap " + std::to_string(table_cap));
    }
    return steps;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw ValidationError("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t Rational::floor_times(std::int64_t multiplier) const {
    const Int128 product = static_cast<Int128>(num_) * multiplier;
    Int128 q = product / den_;
    if (product % den_ != 0 && product < 0) {
        --q;
    }
    if (q > std::numeric_limits<std::int64_t>::max() || q < std::numeric_limits<std::int64_t>::min()) {
        throw ValidationError("radius overflows 64-bit range");
    }
    return static_cast<std::int64_t>(q);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Int128 lhs = static_cast<Int128>(a.num_) * b.den_;
    const Int128 rhs = static_cast<Int128>(b.num_) * a.den_;
    return lhs <=> rhs;
}

Rational operator*(const Rational& a, std::int64_t n) {
    const std::int64_t common = std::gcd(n, a.den_);
    const Int128 num = static_cast<Int128>(a.num_) * (n / common);
    if (num > std::numeric_limits<std::int64_t>::max() || num < std::numeric_limits<std::int64_t>::min()) {
        throw ValidationError("rational product overflows 64-bit range");
    }
    return Rational(static_cast<std::int64_t>(num), a.den_ / common);
}

ScaledLengths ScaledLengths::make(std::vector<std::int64_t> integer_lengths, std::int64_t scale) {
    if (integer_lengths.empty()) {
        throw ValidationError("empty length list");
    }
    if (scale <= 0) {
        throw ValidationError("scale must be a positive integer");
    }
    std::int64_t g = scale;
    for (std::size_t i = 0; i < integer_lengths.size(); ++i) {
        if (integer_lengths[i] <= 0) {
            throw ValidationError("nonpositive length at index " + std::to_string(i));
        }
        g = std::gcd(g, integer_lengths[i]);
    }
    for (auto& v : integer_lengths) {
        v /= g;
    }
    return ScaledLengths(std::move(integer_lengths), scale / g);
}

ScaledLengths ScaledLengths::rationalize(const RoseLengths& lengths, std::int64_t scale) {
    if (scale <= 0) {
        throw ValidationError("scale must be a positive integer");
    }
    std::vector<std::int64_t> ints;
    ints.reserve(lengths.rank());
    for (std::size_t i = 0; i < lengths.rank(); ++i) {
        const double scaled = std::round(lengths[i] * static_cast<double>(scale));
        if (scaled < 1.0) {
            throw ValidationError("length at index " + std::to_string(i) +
                                  " rounds to zero at scale " + std::to_string(scale));
        }
        if (scaled > 9.0e15) {
            throw ValidationError("length at index " + std::to_string(i) + " too large at scale " +
                                  std::to_string(scale));
        }
        ints.push_back(static_cast<std::int64_t>(scaled));
    }
    return make(std::move(ints), scale);
}

std::vector<double> ScaledLengths::as_doubles() const {
    std::vector<double> out;
    out.reserve(integer_lengths_.size());
    for (auto v : integer_lengths_) {
        out.push_back(static_cast<double>(v) / static_cast<double>(scale_));
    }
    return out;
}

BigInt exact_ball_count(const ScaledLengths& lengths, const Rational& radius,
                        std::int64_t table_cap) {
    const std::int64_t steps = checked_table_size(lengths, radius, table_cap);
    LayerSweep sweep(lengths.integer_lengths());
    while (sweep.weight() < steps) {
        sweep.step();
    }
    return sweep.cumulative();
}

CensusCurve census_curve(const ScaledLengths& lengths, const Rational& r_max, const Rational& step,
                         std::int64_t table_cap) {
    if (step.num() <= 0 || step > r_max) {
        throw ValidationError("census step must satisfy 0 < step <= r_max");
    }
    checked_table_size(lengths, r_max, table_cap);

    CensusCurve curve{lengths, {}, {}};
    LayerSweep sweep(lengths.integer_lengths());
    for (std::int64_t j = 1;; ++j) {
        const Rational radius = step * j;
        if (radius > r_max) {
            break;
        }
        const std::int64_t target = radius.floor_times(lengths.scale());
        while (sweep.weight() < target) {
            sweep.step();
        }
        curve.radii.push_back(radius);
        curve.counts.push_back(sweep.cumulative());
    }
    return curve;
}

// GCC 11 reports a spurious memcpy overflow inside cpp_int's right shift.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wstringop-overflow"
#pragma GCC diagnostic ignored "-Wstringop-overread"
double log_big(const BigInt& n) {
    if (n <= 0) {
        throw ValidationError("log of a nonpositive count");
    }
    const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(n));
    if (bits < 1000) {
        return std::log(n.convert_to<double>());
    }
    const std::int64_t shift = bits - 64;
    const BigInt top = n >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}
#pragma GCC diagnostic pop

double growth_rate_estimate(const CensusCurve& curve, const std::pair<Rational, Rational>& window) {
    const auto& [r1, r2] = window;
    if (!(r2 > r1)) {
        throw ValidationError("growth window needs R2 > R1");
    }
    const auto index_of = [&](const Rational& r) {
        const auto it = std::find(curve.radii.begin(), curve.radii.end(), r);
        if (it == curve.radii.end()) {
            throw ValidationError("radius " + r.to_string() + " is not sampled on the census curve");
        }
        return static_cast<std::size_t>(it - curve.radii.begin());
    };
    const BigInt& n1 = curve.counts[index_of(r1)];
    const BigInt& n2 = curve.counts[index_of(r2)];
    if (n1 < 1 || n2 < 1) {
        throw ValidationError("growth window contains zero counts");
    }
    return (log_big(n2) - log_big(n1)) / (r2.to_double() - r1.to_double());
}

}  // namespace rose
