#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rose/error.hpp"
#include "rose/types.hpp"

using rose::validate_lengths;

TEST_CASE("validate_lengths passes valid input through") {
    const std::vector<double> raw{1.0, 2.0};
    const auto lengths = validate_lengths(raw);
    CHECK(lengths.rank() == 2);
    CHECK(lengths[0] == 1.0);
    CHECK(lengths[1] == 2.0);
    CHECK(lengths.min() == 1.0);
    CHECK(lengths.max() == 2.0);
}

TEST_CASE("validate_lengths keeps order and duplicates") {
    const std::vector<double> raw{3.0, 1.0, 3.0};
    const auto lengths = validate_lengths(raw);
    CHECK(std::vector<double>(lengths.values().begin(), lengths.values().end()) == raw);
}

TEST_CASE("validate_lengths diagnostics name the index") {
    CHECK_THROWS_WITH_AS(validate_lengths(std::vector<double>{1.0, 0.0}),
                         "nonpositive length at index 1", rose::ValidationError);
    CHECK_THROWS_WITH_AS(validate_lengths(std::vector<double>{}), "empty length list",
                         rose::ValidationError);
    CHECK_THROWS_WITH_AS(validate_lengths(std::vector<double>{-2.0}),
                         "nonpositive length at index 0", rose::ValidationError);
    CHECK_THROWS_WITH_AS(
        validate_lengths(std::vector<double>{1.0, 1.0, std::numeric_limits<double>::infinity()}),
        "non-finite length at index 2", rose::ValidationError);
    CHECK_THROWS_AS(validate_lengths(std::vector<double>{std::nan("")}), rose::ValidationError);
}

TEST_CASE("validate_lengths is idempotent") {
    const auto once = validate_lengths(std::vector<double>{0.25, 7.5, 0.25});
    const auto twice = validate_lengths(once.values());
    CHECK(once == twice);
}

TEST_CASE("group samples reject negative exponents") {
    const std::vector<double> d{1.0, 2.0};
    CHECK(rose::make_group_sample(d, 0.0).delta == 0.0);
    CHECK_THROWS_AS(rose::make_group_sample(d, -0.5), rose::ValidationError);
    CHECK_THROWS_AS(rose::make_group_sample(std::vector<double>{1.0, -1.0}, 1.0), rose::ValidationError);
}

TEST_CASE("entropy method names") {
    CHECK(std::string(rose::to_string(rose::EntropyMethod::closed_form_root)) == "closed-form-root");
    CHECK(std::string(rose::to_string(rose::EntropyMethod::spectral)) == "spectral");
    CHECK(std::string(rose::to_string(rose::EntropyMethod::degenerate)) == "degenerate");
}
