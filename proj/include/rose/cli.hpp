#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rose/census.hpp"
#include "rose/types.hpp"

namespace rose::cli {

enum class Command { entropy, lim, census, certify, collar, report };
enum class OutputFormat { json, csv, plain };

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitConvergence = 2,
    kExitInfeasible = 3,
};

struct JobConfig {
    Command command = Command::entropy;

    // Input: exactly one of input_path or the inline fields.
    std::optional<std::string> input_path;
    std::optional<std::vector<double>> lengths;
    std::optional<std::vector<double>> displacements;
    std::optional<double> delta;
    std::optional<double> h;
    std::optional<std::vector<double>> priors;

    double tol = kEntropyTolerance;
    double spectral_tol = kSpectralTolerance;
    double certificate_tol = kCertificateTolerance;

    std::int64_t scale = 1;
    std::optional<Rational> r_max;
    std::optional<Rational> step;
    std::optional<std::pair<Rational, Rational>> window;
    std::int64_t table_cap = kDefaultTableCap;

    OutputFormat format = OutputFormat::json;
    bool strict = false;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string document;
};

using ParsedInput = std::variant<RoseLengths, GroupSample>;

/// JSON object ({"lengths": [...]} or {"displacements": [...], "delta": x}) or
/// CSV with header "length" or "displacement,delta". Throws ValidationError
/// naming the offending field or line.
ParsedInput parse_input(std::string_view document);

/// "3", "1.25" or "7/2", converted exactly.
Rational parse_rational(std::string_view text);

/// Thrown by parse_command_line for --help; carries the rendered help.
struct HelpRequested {
    std::string text;
};

/// Throws ValidationError on a missing or conflicting input source.
JobConfig parse_command_line(int argc, const char* const* argv);

RunResult run(const JobConfig& config);

const char* to_string(Command command) noexcept;

}  // namespace rose::cli
