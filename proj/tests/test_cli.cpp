#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "rose/cli.hpp"
#include "rose/error.hpp"

using nlohmann::json;
using rose::cli::Command;
using rose::cli::JobConfig;
using rose::cli::parse_input;

namespace {

JobConfig parse(std::vector<std::string> args) {
    args.insert(args.begin(), "rose");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return rose::cli::parse_command_line(static_cast<int>(argv.size()), argv.data());
}

json run_json(const std::vector<std::string>& args, int expected_exit = 0) {
    const auto result = rose::cli::run(parse(args));
    REQUIRE(result.exit_code == expected_exit);
    return json::parse(result.document);
}

std::string temp_file(const std::string& name, const std::string& body) {
    const std::string path = "rose_cli_test_" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("parse_input JSON lengths") {
    const auto parsed = parse_input(R"({"lengths":[1.0,2.0]})");
    REQUIRE(std::holds_alternative<rose::RoseLengths>(parsed));
    CHECK(std::get<rose::RoseLengths>(parsed) == rose::validate_lengths(std::vector<double>{1, 2}));
}

TEST_CASE("parse_input JSON sample") {
    const auto parsed = parse_input(R"({"displacements":[1.5, 2.5], "delta": 0.75})");
    REQUIRE(std::holds_alternative<rose::GroupSample>(parsed));
    CHECK(std::get<rose::GroupSample>(parsed).delta == 0.75);
}

TEST_CASE("parse_input CSV") {
    const auto lengths = parse_input("length\n1.0\n2.5\n\n");
    REQUIRE(std::holds_alternative<rose::RoseLengths>(lengths));
    CHECK(std::get<rose::RoseLengths>(lengths).rank() == 2);

    const auto sample = parse_input("displacement,delta\n1.0,0.5\n3.0,0.5\n");
    REQUIRE(std::holds_alternative<rose::GroupSample>(sample));
    CHECK(std::get<rose::GroupSample>(sample).delta == 0.5);
    CHECK(std::get<rose::GroupSample>(sample).displacements[1] == 3.0);
}

TEST_CASE("parse_input diagnostics") {
    CHECK_THROWS_WITH_AS(parse_input(R"({"lengths":[1.0,-2.0]})"),
                         "field 'lengths': nonpositive length at index 1", rose::ValidationError);
    CHECK_THROWS_WITH_AS(parse_input(R"({"lengths":[1.0,"x"]})"), "field 'lengths[1]' must be a number",
                         rose::ValidationError);
    CHECK_THROWS_WITH_AS(parse_input(R"({"displacements":[1.0]})"), "field 'delta' must be a number",
                         rose::ValidationError);
    CHECK_THROWS_AS(parse_input(R"({"lengths":)"), rose::ValidationError);
    CHECK_THROWS_AS(parse_input(R"({"other":1})"), rose::ValidationError);
    CHECK_THROWS_WITH_AS(parse_input("length\n1.0\nabc\n"), "line 3: not a number: 'abc'",
                         rose::ValidationError);
    CHECK_THROWS_WITH_AS(parse_input("length\n1.0\n-1\n"), "line 3: nonpositive or non-finite value",
                         rose::ValidationError);
    CHECK_THROWS_WITH_AS(parse_input("displacement,delta\n1,0.5\n2,0.6\n"),
                         "line 3: delta differs from earlier rows", rose::ValidationError);
    CHECK_THROWS_AS(parse_input("width\n1\n"), rose::ValidationError);
}

TEST_CASE("parse_rational") {
    CHECK(rose::cli::parse_rational("3") == rose::Rational(3));
    CHECK(rose::cli::parse_rational("1.25") == rose::Rational(5, 4));
    CHECK(rose::cli::parse_rational("7/2") == rose::Rational(7, 2));
    CHECK_THROWS_AS(rose::cli::parse_rational("x"), rose::ValidationError);
    CHECK_THROWS_AS(rose::cli::parse_rational("1/0"), rose::ValidationError);
}

TEST_CASE("command line parsing") {
    const auto config = parse({"census", "--lengths", "1,2", "--scale", "4", "--rmax", "5/2", "--window",
                               "1,5/2", "--format", "csv"});
    CHECK(config.command == Command::census);
    CHECK(*config.lengths == std::vector<double>{1, 2});
    CHECK(config.scale == 4);
    CHECK(*config.r_max == rose::Rational(5, 2));
    CHECK(config.window->first == rose::Rational(1));
    CHECK(config.format == rose::cli::OutputFormat::csv);

    CHECK_THROWS_AS(parse({"entropy", "--lengths", "1,1", "--input", "x.json"}), rose::ValidationError);
    CHECK_THROWS_AS(parse({"frobnicate"}), rose::ValidationError);
    CHECK_THROWS_AS(parse({}), rose::ValidationError);
    CHECK_THROWS_AS(parse({"entropy", "--lengths", "1,a"}), rose::ValidationError);
    CHECK_THROWS_AS(parse({"entropy", "--help"}), rose::cli::HelpRequested);
}

TEST_CASE("entropy command") {
    const auto doc = run_json({"entropy", "--lengths", "1,1"});
    CHECK(doc["command"] == "entropy");
    CHECK(std::abs(doc["results"]["h"].get<double>() - 1.0986123) < 1e-7);
    CHECK(std::abs(doc["results"]["residual"].get<double>()) < 1e-12);
}

TEST_CASE("census command slope") {
    const auto doc = run_json({"census", "--lengths", "1,1", "--scale", "1", "--rmax", "20", "--window", "10,20"});
    const double slope = doc["results"]["growth_rate"].get<double>();
    CHECK(std::abs(slope - std::log(3.0)) < 0.01 * std::log(3.0));
    CHECK(doc["results"]["lengths_used"][0]["exact"] == "1");
}

TEST_CASE("census command records rounded lengths") {
    const auto doc = run_json({"census", "--lengths", "1.04,2", "--scale", "10", "--rmax", "6"});
    CHECK(doc["results"]["lengths_used"][0]["exact"] == "1");
    CHECK(doc["results"]["lengths_used"][0]["value"] == 1.0);
    CHECK(doc["input"]["lengths"][0] == 1.04);
}

TEST_CASE("collar command") {
    const auto doc = run_json({"collar", "--h", "1", "--priors", "1,2"});
    const auto& r = doc["results"];
    CHECK(r["feasible"] == true);
    CHECK(std::abs(r["plug_back_residual"].get<double>()) < 1e-12);
    CHECK(r["asymptotic_bound"].is_number());

    const auto infeasible = rose::cli::run(parse({"collar", "--h", "1", "--priors", "0.01,0.01"}));
    CHECK(infeasible.exit_code == rose::cli::kExitOk);
    CHECK(json::parse(infeasible.document)["results"]["feasible"] == false);
    const auto strict = rose::cli::run(parse({"collar", "--h", "1", "--priors", "0.01,0.01", "--strict"}));
    CHECK(strict.exit_code == rose::cli::kExitInfeasible);

    CHECK(rose::cli::run(parse({"collar", "--priors", "1"})).exit_code == rose::cli::kExitValidation);
}

TEST_CASE("certify command from a CSV file") {
    const auto path = temp_file("sample.csv", "displacement,delta\n1.0,1.0\n1.0,1.0\n");
    const auto doc = run_json({"certify", "--input", path});
    CHECK(doc["results"]["satisfied"] == false);
    CHECK(std::abs(doc["results"]["sum_value"].get<double>() - 0.5378828427399902) < 1e-15);
    std::remove(path.c_str());
}

TEST_CASE("exit codes") {
    CHECK(rose::cli::run(parse({"entropy", "--lengths", "1,0"})).exit_code == rose::cli::kExitValidation);
    CHECK(rose::cli::run(parse({"lim", "--lengths", "3"})).exit_code == rose::cli::kExitValidation);
    CHECK(rose::cli::run(parse({"entropy", "--input", "/nonexistent/x.json"})).exit_code ==
          rose::cli::kExitValidation);
    auto config = parse({"lim", "--lengths", "1,2"});
    config.spectral_tol = 1e-300;
    CHECK(rose::cli::run(config).exit_code == rose::cli::kExitConvergence);
}

TEST_CASE("reports echo their input exactly") {
    for (const auto& v : oracle::random_roses(41, 20, 6, 0.1, 10.0)) {
        JobConfig config;
        config.command = Command::entropy;
        config.lengths = v;
        const auto doc = json::parse(rose::cli::run(config).document);
        const auto reread = parse_input(doc["input"].dump());
        CHECK(std::get<rose::RoseLengths>(reread) == rose::validate_lengths(v));
    }
    const auto doc = run_json({"certify", "--displacements", "0.1,3.3", "--delta", "0.123456789"});
    const auto reread = parse_input(doc["input"].dump());
    CHECK(std::get<rose::GroupSample>(reread) == rose::make_group_sample(std::vector<double>{0.1, 3.3}, 0.123456789));
}

TEST_CASE("identical jobs give byte-identical reports") {
    for (const char* format : {"json", "csv", "plain"}) {
        const std::vector<std::string> args{"report", "--lengths", "1,2,3", "--format", format};
        CHECK(rose::cli::run(parse(args)).document == rose::cli::run(parse(args)).document);
    }
}

TEST_CASE("csv output has a one-line header") {
    const auto result = rose::cli::run(parse({"entropy", "--lengths", "1,1", "--format", "csv"}));
    CHECK(result.document.rfind("key,value\ncommand,entropy\n", 0) == 0);
}

TEST_CASE("report combines every stage") {
    const auto doc = run_json({"report", "--lengths", "1,2"});
    const auto& r = doc["results"];
    CHECK(r["solver_gap"].get<double>() < 1e-8);
    CHECK(std::abs(r["certificate"]["sum_value"].get<double>() - 0.5) < 1e-12);
    CHECK(r["census"]["relative_error"].get<double>() < 0.02);
    CHECK(r["collar2_sweep"].size() == 8);
    CHECK(std::abs(r["identities"]["summed_lines"].get<double>()) < 1e-9);
}

TEST_CASE("tolerance env var feeds the default") {
    setenv("ROSE_TOL", "1e-6", 1);
    CHECK(parse({"entropy", "--lengths", "1,2"}).tol == 1e-6);
    unsetenv("ROSE_TOL");
    CHECK(parse({"entropy", "--lengths", "1,2"}).tol == rose::kEntropyTolerance);
}
