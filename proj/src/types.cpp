#include "rose/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rose/error.hpp"

namespace rose {

double RoseLengths::min() const { return *std::min_element(values_.begin(), values_.end()); }

double RoseLengths::max() const { return *std::max_element(values_.begin(), values_.end()); }

RoseLengths validate_lengths(std::span<const double> raw) {
    if (raw.empty()) {
        throw ValidationError("empty length list");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i])) {
            throw ValidationError("non-finite length at index " + std::to_string(i));
        }
        if (raw[i] <= 0.0) {
            throw ValidationError("nonpositive length at index " + std::to_string(i));
        }
    }
    return RoseLengths(std::vector<double>(raw.begin(), raw.end()));
}

const char* to_string(EntropyMethod method) noexcept {
    switch (method) {
        case EntropyMethod::degenerate: return "degenerate";
        case EntropyMethod::closed_form_root: return "closed-form-root";
        case EntropyMethod::spectral: return "spectral";
    }
    return "unknown";
}

GroupSample make_group_sample(std::span<const double> displacements, double delta) {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw ValidationError("critical exponent must be finite and nonnegative");
    }
    return GroupSample{validate_lengths(displacements), delta};
}

}  // namespace rose
