#include "rose/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rose/bounds.hpp"
#include "rose/entropy.hpp"
#include "rose/error.hpp"

namespace rose::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view text, const std::string& where) {
    const auto t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ValidationError(where + ": not a number: '" + std::string(t) + "'");
    }
    return value;
}

std::vector<double> json_numbers(const Json& doc, const char* field) {
    if (!doc.contains(field)) {
        throw ValidationError(std::string("missing field '") + field + "'");
    }
    const Json& arr = doc.at(field);
    if (!arr.is_array()) {
        throw ValidationError(std::string("field '") + field + "' must be an array");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) {
            throw ValidationError(std::string("field '") + field + "[" + std::to_string(i) +
                                  "]' must be a number");
        }
        out.push_back(arr[i].get<double>());
    }
    return out;
}

template <class F>
auto with_field(const std::string& field, F&& build) {
    try {
        return build();
    } catch (const ValidationError& e) {
        throw ValidationError("field '" + field + "': " + e.what());
    }
}

ParsedInput parse_json_input(std::string_view document) {
    Json doc;
    try {
        doc = Json::parse(document);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("input document must be a JSON object");
    }
    if (doc.contains("lengths")) {
        const auto values = json_numbers(doc, "lengths");
        return with_field("lengths", [&] { return validate_lengths(values); });
    }
    if (doc.contains("displacements")) {
        const auto values = json_numbers(doc, "displacements");
        if (!doc.contains("delta") || !doc.at("delta").is_number()) {
            throw ValidationError("field 'delta' must be a number");
        }
        const double delta = doc.at("delta").get<double>();
        const auto sample_displacements =
            with_field("displacements", [&] { return validate_lengths(values); });
        return with_field("delta", [&] { return make_group_sample(sample_displacements.values(), delta); });
    }
    throw ValidationError("input needs a 'lengths' or 'displacements' field");
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

ParsedInput parse_csv_input(std::string_view document) {
    std::istringstream in{std::string(document)};
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) header = split(line, ',');
    }
    const bool lengths_csv = header == std::vector<std::string>{"length"};
    const bool sample_csv = header == std::vector<std::string>{"displacement", "delta"};
    if (!lengths_csv && !sample_csv) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": CSV header must be 'length' or 'displacement,delta'");
    }

    std::vector<double> values;
    std::optional<double> delta;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw ValidationError(where + ": expected " + std::to_string(header.size()) + " field(s)");
        }
        values.push_back(parse_double(cells[0], where));
        if (sample_csv) {
            const double d = parse_double(cells[1], where);
            if (delta && *delta != d) {
                throw ValidationError(where + ": delta differs from earlier rows");
            }
            delta = d;
        }
        if (!std::isfinite(values.back()) || values.back() <= 0.0) {
            throw ValidationError(where + ": nonpositive or non-finite value");
        }
    }
    if (values.empty()) {
        throw ValidationError("empty length list");
    }
    if (lengths_csv) return validate_lengths(values);
    return make_group_sample(values, *delta);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open input file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json lengths_echo(const RoseLengths& lengths) {
    return Json{{"lengths", std::vector<double>(lengths.values().begin(), lengths.values().end())}};
}

Json sample_echo(const GroupSample& sample) {
    const auto d = sample.displacements.values();
    return Json{{"displacements", std::vector<double>(d.begin(), d.end())}, {"delta", sample.delta}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json solution_json(const EntropySolution& s) {
    return Json{{"h", s.h},
                {"residual", s.residual},
                {"bracket", {s.bracket_low, s.bracket_high}},
                {"iterations", s.iterations},
                {"method", to_string(s.method)}};
}

Json rational_json(const Rational& r) {
    return Json{{"exact", r.to_string()}, {"value", r.to_double()}};
}

Rational default_rmax(double h) {
    if (h <= 0.0) return Rational(30);
    return Rational(static_cast<std::int64_t>(std::ceil(30.0 / h)));
}

struct Outcome {
    Json doc;
    bool infeasible = false;
};

RoseLengths lengths_input(const JobConfig& config) {
    if (config.input_path) {
        auto parsed = parse_input(read_file(*config.input_path));
        if (auto* lengths = std::get_if<RoseLengths>(&parsed)) return *lengths;
        throw ValidationError("command expects a 'lengths' document");
    }
    if (!config.lengths) throw ValidationError("missing --lengths or --input");
    return validate_lengths(*config.lengths);
}

GroupSample sample_input(const JobConfig& config) {
    if (config.input_path) {
        auto parsed = parse_input(read_file(*config.input_path));
        if (auto* sample = std::get_if<GroupSample>(&parsed)) return *sample;
        throw ValidationError("command expects a 'displacements' document");
    }
    if (!config.displacements || !config.delta) {
        throw ValidationError("certify needs --displacements and --delta, or --input");
    }
    return make_group_sample(*config.displacements, *config.delta);
}

Json census_json(const RoseLengths& lengths, const JobConfig& config) {
    const auto scaled = ScaledLengths::rationalize(lengths, config.scale);
    const auto used = validate_lengths(scaled.as_doubles());
    const double h = rose_entropy(used, config.tol).h;
    const Rational r_max = config.r_max.value_or(default_rmax(h));
    const Rational step = config.step.value_or(Rational(r_max.num(), r_max.den() * 20));
    const auto window =
        config.window.value_or(std::make_pair(Rational(r_max.num(), r_max.den() * 2), r_max));
    const auto curve = census_curve(scaled, r_max, step, config.table_cap);
    const double slope = growth_rate_estimate(curve, window);

    Json used_json = Json::array();
    for (std::size_t i = 0; i < scaled.rank(); ++i) {
        used_json.push_back(rational_json(Rational(scaled.integer_lengths()[i], scaled.scale())));
    }
    Json rows = Json::array();
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        rows.push_back({{"radius", curve.radii[i].to_string()}, {"count", curve.counts[i].str()}});
    }
    return Json{{"lengths_used", used_json},
                {"scale", scaled.scale()},
                {"r_max", r_max.to_string()},
                {"step", step.to_string()},
                {"window", {window.first.to_string(), window.second.to_string()}},
                {"curve", rows},
                {"growth_rate", slope},
                {"entropy_of_lengths_used", h},
                {"relative_error", h > 0.0 ? Json(std::abs(slope - h) / h) : Json(nullptr)}};
}

Json certificate_json(const CertificateResult& c) {
    return Json{{"sum_value", c.sum_value},
                {"satisfied", c.satisfied},
                {"delta_lower_bound", c.delta_lower_bound},
                {"max_displacement_bound", optional_number(c.max_displacement_bound)}};
}

Json collar_json(const CollarReport& r) {
    Json doc{{"h", r.h},
             {"prior_lengths", r.prior_lengths},
             {"exact_bound", optional_number(r.exact_bound)},
             {"feasible", r.exact_bound.has_value()},
             {"asymptotic_bound", optional_number(r.asymptotic_bound)},
             {"asymptotic_vacuous", r.asymptotic_vacuous},
             {"comparison_bcgs", optional_number(r.comparison_bcgs)},
             {"margin", optional_number(r.margin)},
             {"plug_back_residual", optional_number(r.plug_back_residual)}};
    if (r.prior_lengths.size() == 1) {
        doc["closed_form_bound"] = exact_min_second_length(r.h, r.prior_lengths.front());
    }
    return doc;
}

bool collar_incomplete(const CollarReport& r) {
    return !r.exact_bound || !r.asymptotic_bound || r.asymptotic_vacuous;
}

Json identities_json(const RoseLengths& lengths, double h, const std::vector<double>& x) {
    const double k = static_cast<double>(lengths.rank());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double summed = 0.0;
    for (std::size_t i = 0; i < lengths.rank(); ++i) {
        const double decay = std::exp(-h * lengths[i]);
        const double weighted = (1.0 + decay) * x[i];
        lo = std::min(lo, weighted);
        hi = std::max(hi, weighted);
        summed += (1.0 - (2.0 * k - 1.0) * decay) * x[i];
    }
    return Json{{"weighted_spread", hi - lo}, {"summed_lines", summed}};
}

Outcome run_command(const JobConfig& config) {
    Json doc{{"command", to_string(config.command)}};
    switch (config.command) {
        case Command::entropy: {
            const auto lengths = lengths_input(config);
            doc["input"] = lengths_echo(lengths);
            doc["results"] = solution_json(rose_entropy(lengths, config.tol));
            doc["solver"] = {{"tolerance", config.tol}};
            return {doc};
        }
        case Command::lim: {
            const auto lengths = lengths_input(config);
            const auto solution = lim_entropy(lengths, config.spectral_tol);
            const auto x = positive_solution(lengths, solution.h, std::max(config.spectral_tol * 10, 1e-8));
            const auto perron_root = perron(lim_matrix(lengths, solution.h), config.spectral_tol * 1e-3);
            doc["input"] = lengths_echo(lengths);
            doc["results"] = solution_json(solution);
            doc["results"]["spectral_radius"] = perron_root.rho;
            doc["results"]["positive_solution"] = x;
            doc["results"]["identities"] = identities_json(lengths, solution.h, x);
            doc["solver"] = {{"tolerance", config.spectral_tol},
                             {"power_iterations", perron_root.iterations}};
            return {doc};
        }
        case Command::census: {
            const auto lengths = lengths_input(config);
            doc["input"] = lengths_echo(lengths);
            doc["results"] = census_json(lengths, config);
            doc["solver"] = {{"table_cap", config.table_cap}};
            return {doc};
        }
        case Command::certify: {
            const auto sample = sample_input(config);
            doc["input"] = sample_echo(sample);
            doc["results"] = certificate_json(certify(sample, config.certificate_tol));
            doc["solver"] = {{"tolerance", config.certificate_tol}};
            return {doc};
        }
        case Command::collar: {
            std::vector<double> priors;
            if (config.input_path) {
                const auto lengths = lengths_input(config);
                priors.assign(lengths.values().begin(), lengths.values().end());
            } else if (config.priors) {
                priors = *config.priors;
            } else {
                throw ValidationError("collar needs --priors or --input");
            }
            if (!config.h) throw ValidationError("collar needs --h");
            const auto report = collar_report(*config.h, priors);
            doc["input"] = {{"h", *config.h}, {"priors", priors}};
            doc["results"] = collar_json(report);
            return {doc, collar_incomplete(report)};
        }
        case Command::report: {
            const auto lengths = lengths_input(config);
            doc["input"] = lengths_echo(lengths);
            Json results;
            const auto closed = rose_entropy(lengths, config.tol);
            results["entropy"] = solution_json(closed);
            bool infeasible = false;
            if (lengths.rank() >= 2) {
                const auto spectral = lim_entropy(lengths, config.spectral_tol);
                results["lim"] = solution_json(spectral);
                results["solver_gap"] = std::abs(closed.h - spectral.h);
                const auto x = positive_solution(lengths, closed.h, 1e-8);
                results["positive_solution"] = x;
                results["identities"] = identities_json(lengths, closed.h, x);
            }
            results["census"] = census_json(lengths, config);
            results["certificate"] =
                certificate_json(certify(GroupSample{lengths, closed.h}, config.certificate_tol));
            if (lengths.rank() >= 2) {
                std::vector<double> sorted(lengths.values().begin(), lengths.values().end());
                std::sort(sorted.begin(), sorted.end());
                sorted.pop_back();
                const auto report = collar_report(closed.h, sorted);
                results["collar"] = collar_json(report);
                infeasible = collar_incomplete(report);

                Json sweep = Json::array();
                for (int e = 1; e <= 8; ++e) {
                    const double l1 = std::pow(10.0, -e);
                    const double exact = *exact_min_last_length(closed.h, std::span(&l1, 1));
                    const double asymptotic = collar2_asymptotic(closed.h, l1).value;
                    sweep.push_back({{"l1", l1},
                                     {"exact", exact},
                                     {"asymptotic", asymptotic},
                                     {"gap", exact - asymptotic},
                                     {"bcgs", bcgs_bound(closed.h, l1)}});
                }
                results["collar2_sweep"] = sweep;
            }
            doc["results"] = results;
            doc["solver"] = {{"tolerance", config.tol}, {"spectral_tolerance", config.spectral_tol}};
            return {doc, infeasible};
        }
    }
    throw ValidationError("unknown command");
}

void flatten(const Json& node, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            flatten(value, path.empty() ? key : path + "." + key, out);
        }
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            flatten(node[i], path + "[" + std::to_string(i) + "]", out);
        }
    } else if (node.is_string()) {
        out.emplace_back(path, node.get<std::string>());
    } else {
        out.emplace_back(path, node.dump());
    }
}

std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string render(const Json& doc, OutputFormat format) {
    if (format == OutputFormat::json) {
        return doc.dump(2) + "\n";
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    std::string out = format == OutputFormat::csv ? "key,value\n" : "";
    for (const auto& [key, value] : rows) {
        out += format == OutputFormat::csv ? csv_cell(key) + "," + csv_cell(value) + "\n"
                                           : key + " = " + value + "\n";
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text) { return split(text, ','); }

}  // namespace

const char* to_string(Command command) noexcept {
    switch (command) {
        case Command::entropy: return "entropy";
        case Command::lim: return "lim";
        case Command::census: return "census";
        case Command::certify: return "certify";
        case Command::collar: return "collar";
        case Command::report: return "report";
    }
    return "unknown";
}

ParsedInput parse_input(std::string_view document) {
    const auto body = trim(document);
    if (!body.empty() && body.front() == '{') {
        return parse_json_input(body);
    }
    return parse_csv_input(document);
}

Rational parse_rational(std::string_view text) {
    const auto t = trim(text);
    const auto fail = [&] { return ValidationError("not a rational number: '" + std::string(t) + "'"); };
    const auto parse_int = [&](std::string_view s) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw fail();
        return v;
    };
    if (const auto slash = t.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(t.substr(0, slash)), parse_int(t.substr(slash + 1)));
    }
    const auto dot = t.find('.');
    if (dot == std::string_view::npos) {
        return Rational(parse_int(t));
    }
    const auto frac = t.substr(dot + 1);
    if (frac.size() > 15) throw fail();
    std::string digits(t.substr(0, dot));
    digits += frac;
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    if (digits == "-" || digits.empty()) throw fail();
    return Rational(parse_int(digits), den);
}

JobConfig parse_command_line(int argc, const char* const* argv) {
    JobConfig config;
    CLI::App app{"Volume entropy of metric rose graphs and the bounds it controls", "rose"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::string format = "json";
    std::string r_max;
    std::string step;
    std::vector<std::string> window;
    std::string lengths_text;
    std::string displacements_text;
    std::string priors_text;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", config.input_path, "JSON or CSV input document");
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "csv", "plain"}));
        sub->add_flag("--strict", config.strict, "Exit 3 on infeasible or undefined bounds");
        sub->add_option("--tol", config.tol, "Residual tolerance of the closed-form solver")
            ->envname("ROSE_TOL")
            ->capture_default_str();
        sub->add_option("--spectral-tol", config.spectral_tol, "Tolerance on |rho - 1|")
            ->capture_default_str();
        sub->add_option("--cert-tol", config.certificate_tol, "Certificate slack on the sum")
            ->capture_default_str();
    };
    const auto add_lengths = [&](CLI::App* sub) {
        sub->add_option("--lengths", lengths_text, "Comma-separated edge lengths");
    };
    const auto add_census = [&](CLI::App* sub) {
        sub->add_option("--scale", config.scale, "Denominator used to rationalize lengths")
            ->capture_default_str();
        sub->add_option("--rmax", r_max, "Largest radius (decimal or p/q)");
        sub->add_option("--step", step, "Radius step (decimal or p/q)");
        sub->add_option("--window", window, "Growth window R1,R2")->delimiter(',')->expected(2);
        sub->add_option("--table-cap", config.table_cap, "Cap on scale * rmax")->capture_default_str();
    };

    struct Entry {
        Command command;
        CLI::App* app;
    };
    std::vector<Entry> subs;
    const auto make = [&](Command command, const char* help) {
        auto* sub = app.add_subcommand(to_string(command), help);
        add_common(sub);
        subs.push_back({command, sub});
        return sub;
    };

    add_lengths(make(Command::entropy, "Entropy by root-finding on the logistic sum"));
    add_lengths(make(Command::lim, "Entropy from the Perron root of the linear system"));
    auto* census = make(Command::census, "Exact orbit-ball counts and growth slope");
    add_lengths(census);
    add_census(census);
    auto* cert = make(Command::certify, "Check the critical-exponent inequality");
    cert->add_option("--displacements", displacements_text, "Comma-separated displacements");
    cert->add_option("--delta", config.delta, "Critical exponent");
    auto* collar = make(Command::collar, "Bound on the last loop length");
    collar->add_option("--h", config.h, "Volume entropy");
    collar->add_option("--priors", priors_text, "Ascending comma-separated prior lengths");
    auto* report = make(Command::report, "Entropy, census, certificate and collar sweeps");
    add_lengths(report);
    add_census(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::ostringstream out;
            app.exit(e, out, out);
            throw HelpRequested{out.str()};
        }
        throw ValidationError(e.what());
    }

    for (const auto& entry : subs) {
        if (entry.app->parsed()) config.command = entry.command;
    }

    const auto numbers = [](const std::string& text, const char* flag) {
        std::vector<double> out;
        for (const auto& cell : split_list(text)) out.push_back(parse_double(cell, flag));
        return out;
    };
    if (!lengths_text.empty()) config.lengths = numbers(lengths_text, "--lengths");
    if (!displacements_text.empty()) config.displacements = numbers(displacements_text, "--displacements");
    if (!priors_text.empty()) config.priors = numbers(priors_text, "--priors");

    if (format == "csv") config.format = OutputFormat::csv;
    if (format == "plain") config.format = OutputFormat::plain;
    if (!r_max.empty()) config.r_max = parse_rational(r_max);
    if (!step.empty()) config.step = parse_rational(step);
    if (window.size() == 2) config.window = std::make_pair(parse_rational(window[0]), parse_rational(window[1]));

    const bool has_inline = config.lengths || config.displacements || config.priors;
    if (config.input_path && has_inline) {
        throw ValidationError("give either --input or inline values, not both");
    }
    return config;
}

RunResult run(const JobConfig& config) {
    try {
        auto outcome = run_command(config);
        const int code = config.strict && outcome.infeasible ? kExitInfeasible : kExitOk;
        return {code, render(outcome.doc, config.format)};
    } catch (const ValidationError& e) {
        return {kExitValidation, render(Json{{"command", to_string(config.command)}, {"error", e.what()}},
                                        config.format)};
    } catch (const ConvergenceError& e) {
        return {kExitConvergence, render(Json{{"command", to_string(config.command)}, {"error", e.what()}},
                                         config.format)};
    }
}

}  // namespace rose::cli
