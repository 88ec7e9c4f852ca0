// bellsets: CH74 / correlation-polytope / uncertainty verification toolkit.
//
// Exit codes: 0 = every check passed (inside / holds / no violation),
//             1 = a check failed (violation found, Outside, inclusion fails),
//             2 = usage or configuration error.

#include "bellsets/ch74.hpp"
#include "bellsets/errors.hpp"
#include "bellsets/metaset.hpp"
#include "bellsets/polytope.hpp"
#include "bellsets/quantum.hpp"
#include "bellsets/report.hpp"
#include "bellsets/rng.hpp"
#include "bellsets/sampler.hpp"
#include "bellsets/uncertainty.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using bellsets::Rational;
using bellsets::Scalar;
using nlohmann::json;
namespace report = bellsets::report;

constexpr double kPi = std::numbers::pi;

Scalar parse_scalar_flag(const std::string& text, const std::string& flag) {
    auto value = bellsets::parse_rational(text);
    if (!value) throw bellsets::Error("cannot parse " + flag + " value '" + text + "' as a rational");
    return Scalar(*value);
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(text);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    return fields;
}

bellsets::quantum::HermitianOperator named_operator(const std::string& name) {
    if (name == "sx") return bellsets::quantum::sigma_x();
    if (name == "sy") return bellsets::quantum::sigma_y();
    if (name == "sz") return bellsets::quantum::sigma_z();
    if (name == "id") return bellsets::quantum::identity(2);
    throw bellsets::Error("unknown operator '" + name + "' (expected sx, sy, sz, id)");
}

bellsets::quantum::StateVector named_state(const std::string& name) {
    using bellsets::quantum::StateVector;
    Eigen::VectorXcd v(2);
    if (name == "up") {
        v << 1, 0;
    } else if (name == "down") {
        v << 0, 1;
    } else if (name == "plus") {
        v << 1, 1;
    } else if (name == "minus") {
        v << 1, -1;
    } else {
        // comma-separated real amplitudes, normalized
        auto fields = split_csv(name);
        if (fields.size() < 1 || fields.size() > bellsets::quantum::kMaxDim) {
            throw bellsets::Error("state must be a named state or 1-16 comma-separated amplitudes");
        }
        v.resize(static_cast<Eigen::Index>(fields.size()));
        for (std::size_t i = 0; i < fields.size(); ++i) {
            v[static_cast<Eigen::Index>(i)] = parse_scalar_flag(fields[i], "--state").to_double();
        }
    }
    return StateVector::normalized(v);
}

bellsets::polytope::Scenario named_scenario(const std::string& name) {
    if (name == "ch") return bellsets::polytope::Scenario::ch();
    if (name == "pair") return bellsets::polytope::Scenario::single_pair();
    if (name == "exclusive") return bellsets::polytope::Scenario::exclusive_pair();
    throw bellsets::Error("unknown scenario '" + name + "' (expected ch, pair, exclusive)");
}

bellsets::quantum::MeasurementAngles parse_angles(const std::string& text) {
    auto fields = split_csv(text);
    if (fields.size() != 4) throw bellsets::Error("--angles expects a1,a2,b1,b2");
    double values[4];
    for (int i = 0; i < 4; ++i) {
        try {
            values[i] = std::stod(fields[static_cast<std::size_t>(i)]);
        } catch (const std::exception&) {
            throw bellsets::Error("cannot parse angle '" + fields[static_cast<std::size_t>(i)] + "'");
        }
    }
    return bellsets::quantum::MeasurementAngles(values[0], values[1], values[2], values[3]);
}

json correlation_json(const bellsets::polytope::CorrelationVector& vec) {
    json singles = json::array();
    for (const Scalar& v : vec.singles) singles.push_back(report::scalar_json(v));
    json joints = json::array();
    for (const Scalar& v : vec.joints) joints.push_back(report::scalar_json(v));
    return json{{"singles", singles}, {"joints", joints}};
}

json membership_json(const bellsets::polytope::MembershipVerdict& verdict) {
    json body{{"inside", verdict.inside}, {"infeasibility", report::rational_json(verdict.infeasibility)}};
    if (verdict.inside) {
        json witness = json::array();
        for (const Rational& w : verdict.witness) witness.push_back(report::rational_json(w));
        body["witness"] = witness;
    }
    return body;
}

struct CommandOutcome {
    json result;
    bool pass = true;
};

struct CliOptions {
    std::string format = "text";
    std::string output;
    std::uint64_t seed = 0;
};

// The default CH detector settings: the grid-exact maximizer of S.
const bellsets::quantum::MeasurementAngles kDefaultAngles{0, 1.5 * kPi, 0.75 * kPi, 0.25 * kPi};

int run_command(const std::string& name, const CliOptions& options, const json& config,
                const std::function<CommandOutcome()>& handler) {
    report::Report rep;
    rep.command = name;
    rep.config = config;
    rep.rng_generator = std::string(bellsets::rng::kGeneratorName);
    rep.seed = options.seed;

    auto start = std::chrono::steady_clock::now();
    CommandOutcome outcome = handler();
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.result = std::move(outcome.result);

    std::string payload = report::emit(rep, report::parse_format(options.format));
    if (options.output.empty()) {
        std::cout << payload;
    } else {
        std::ofstream file(options.output, std::ios::binary);
        if (!file) throw bellsets::Error("cannot open output file " + options.output);
        file << payload;
    }
    return outcome.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bellsets: CH74 inequalities, correlation polytopes, uncertainty intervals"};
    app.require_subcommand(1);
    app.set_config("--config");

    CliOptions options;
    if (const char* env_format = std::getenv("BELLSETS_FORMAT")) options.format = env_format;
    app.add_option("--format", options.format, "Output format: json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--output", options.output, "Write the report to this path instead of stdout");
    app.add_option("--seed", options.seed, "64-bit RNG seed (recorded in every report)")
        ->capture_default_str();

    // ch74
    auto* ch74_cmd = app.add_subcommand("ch74", "Clauser-Horne six-number theorem");
    ch74_cmd->require_subcommand(1);

    std::uint64_t trials = 1000000;
    auto* ch74_verify = ch74_cmd->add_subcommand("verify", "Randomized theorem verification");
    ch74_verify->add_option("--trials", trials, "Number of sampled instances")->capture_default_str();

    std::string x1 = "0", x2 = "0", y1 = "0", y2 = "0", x_cap = "1", y_cap = "1";
    auto* ch74_eval = ch74_cmd->add_subcommand("eval", "Evaluate f and its bounds on one instance");
    ch74_eval->add_option("--x1", x1)->required();
    ch74_eval->add_option("--x2", x2)->required();
    ch74_eval->add_option("--y1", y1)->required();
    ch74_eval->add_option("--y2", y2)->required();
    ch74_eval->add_option("--X", x_cap)->required();
    ch74_eval->add_option("--Y", y_cap)->required();

    // polytope
    auto* polytope_cmd = app.add_subcommand("polytope", "Correlation-polytope checks");
    polytope_cmd->require_subcommand(1);

    std::string scenario_name = "ch";
    std::string vector_text;
    std::string angles_text;
    auto* poly_membership = polytope_cmd->add_subcommand("membership", "LP membership of a correlation vector");
    poly_membership->add_option("--scenario", scenario_name, "ch | pair | exclusive")->capture_default_str();
    poly_membership->add_option("--vector", vector_text,
                                "Comma-separated entries, singles then joints (rationals or decimals)");
    poly_membership->add_option("--angles", angles_text,
                                "Build the singlet vector at detector angles a1,a2,b1,b2 (CH scenario)");

    auto* poly_trivial = polytope_cmd->add_subcommand(
        "trivial", "Facets of the two-event exclusive scenario (no joint term)");

    // quantum
    auto* quantum_cmd = app.add_subcommand("quantum", "Singlet statistics");
    quantum_cmd->require_subcommand(1);

    double grid_step = kPi / 36;
    int refine_iters = 50;
    bool minimize = false;
    auto* quantum_max = quantum_cmd->add_subcommand("maximize-ch", "Extremize the CH combination S");
    quantum_max->add_option("--grid-step", grid_step, "Coarse grid step in radians")->capture_default_str();
    quantum_max->add_option("--refine-iters", refine_iters, "Coordinate-descent rounds")->capture_default_str();
    quantum_max->add_flag("--minimize", minimize, "Minimize S instead");

    // uncertainty
    std::string op_a = "sx", op_b = "sy", state_name = "up";
    auto* uncertainty_cmd = app.add_subcommand("uncertainty", "Generalized uncertainty relation");
    uncertainty_cmd->require_subcommand(1);
    auto* uncertainty_check = uncertainty_cmd->add_subcommand("check", "Verify spread(A)*spread(B) >= |<[A,B]>|/2");
    uncertainty_check->add_option("--a", op_a, "sx | sy | sz | id")->capture_default_str();
    uncertainty_check->add_option("--b", op_b, "sx | sy | sz | id")->capture_default_str();
    uncertainty_check->add_option("--state", state_name, "up | down | plus | minus | amplitudes")
        ->capture_default_str();

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Single-sample vs multi-sample frequency vectors");
    sample_cmd->require_subcommand(1);

    std::string dist_text = "uniform";
    std::uint64_t sample_size = 1000;
    auto* sample_single = sample_cmd->add_subcommand("single", "All observables from one joint sample");
    sample_single->add_option("--scenario", scenario_name, "ch | pair | exclusive")->capture_default_str();
    sample_single->add_option("--dist", dist_text,
                              "uniform | point:BITS | weights:BITS=p/q,BITS=p/q,...")
        ->capture_default_str();
    sample_single->add_option("--size", sample_size, "Sample size")->capture_default_str();

    std::string source_text = "singlet";
    auto* sample_multi = sample_cmd->add_subcommand("multi", "Each observable from its own sample");
    sample_multi->add_option("--scenario", scenario_name, "ch | pair | exclusive")->capture_default_str();
    sample_multi->add_option("--source", source_text,
                             "singlet | point:BITS | marginals:<dist> (dist as in sample single)")
        ->capture_default_str();
    sample_multi->add_option("--angles", angles_text, "Detector angles for the singlet source (default: optimal)");
    sample_multi->add_option("--size", sample_size, "Sample size per observable")->capture_default_str();

    // metaset
    std::string chi_x = "1", chi_y = "1", z_text;
    std::uint64_t inclusion_trials = 10000;
    auto* metaset_cmd = app.add_subcommand("metaset", "Value-range inclusion of chi in psi");
    metaset_cmd->require_subcommand(1);
    auto* metaset_subset = metaset_cmd->add_subcommand("subset", "Check [-XY,0] inside [-Z,0]");
    metaset_subset->add_option("--X", chi_x, "chi bound X > 0")->capture_default_str();
    metaset_subset->add_option("--Y", chi_y, "chi bound Y > 0")->capture_default_str();
    metaset_subset->add_option("--Z", z_text, "Psi width; omit to derive from --a/--b/--state");
    metaset_subset->add_option("--a", op_a, "Operator A when deriving Z")->capture_default_str();
    metaset_subset->add_option("--b", op_b, "Operator B when deriving Z")->capture_default_str();
    metaset_subset->add_option("--state", state_name, "State when deriving Z")->capture_default_str();
    metaset_subset->add_option("--trials", inclusion_trials, "Sampled instances when deriving Z")
        ->capture_default_str();

    app.footer("csv format: rows of key,value; keys are dotted json paths sorted lexicographically.\n"
               "Rational quantities print exactly as p/q. BELLSETS_FORMAT sets the default --format.");

    // Let --format/--seed/--output appear after the subcommand.
    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ch74_verify->parsed()) {
            json config{{"trials", trials}};
            return run_command("ch74 verify", options, config, [&] {
                auto rep = bellsets::ch74::verify_theorem(trials, options.seed);
                CommandOutcome outcome;
                outcome.result = json{
                    {"trials", rep.trials},
                    {"violations", rep.violations},
                    {"min_f", report::rational_json(rep.min_f)},
                    {"max_f", report::rational_json(rep.max_f)},
                    {"corner_min", report::rational_json(rep.corner_min)},
                    {"corner_max", report::rational_json(rep.corner_max)},
                    {"corner_min_attained", rep.corner_min_attained},
                    {"corner_max_attained", rep.corner_max_attained},
                };
                outcome.pass = rep.violations == 0 && rep.corner_min_attained && rep.corner_max_attained;
                return outcome;
            });
        }

        if (ch74_eval->parsed()) {
            json config{{"x1", x1}, {"x2", x2}, {"y1", y1}, {"y2", y2}, {"X", x_cap}, {"Y", y_cap}};
            return run_command("ch74 eval", options, config, [&] {
                bellsets::ch74::CH74Instance inst{
                    parse_scalar_flag(x1, "--x1"),    parse_scalar_flag(x2, "--x2"),
                    parse_scalar_flag(y1, "--y1"),    parse_scalar_flag(y2, "--y2"),
                    parse_scalar_flag(x_cap, "--X"),  parse_scalar_flag(y_cap, "--Y"),
                };
                auto verdict = bellsets::ch74::check_bounds(inst);
                CommandOutcome outcome;
                outcome.result = json{
                    {"f", report::scalar_json(verdict.f)},
                    {"lower", report::scalar_json(verdict.lower)},
                    {"upper", report::scalar_json(verdict.upper)},
                    {"slack_lower", report::scalar_json(verdict.slack_lower)},
                    {"slack_upper", report::scalar_json(verdict.slack_upper)},
                    {"holds", verdict.holds},
                };
                outcome.pass = verdict.holds;
                return outcome;
            });
        }

        if (poly_membership->parsed()) {
            json config{{"scenario", scenario_name}};
            auto scenario = named_scenario(scenario_name);
            bellsets::polytope::CorrelationVector vec;
            if (!angles_text.empty()) {
                if (scenario_name != "ch") throw bellsets::Error("--angles requires --scenario ch");
                vec = bellsets::sampler::singlet_correlation_vector(parse_angles(angles_text));
                config["angles"] = angles_text;
            } else if (!vector_text.empty()) {
                auto fields = split_csv(vector_text);
                if (fields.size() != static_cast<std::size_t>(scenario.dimension())) {
                    throw bellsets::Error("--vector needs " + std::to_string(scenario.dimension()) +
                                          " entries for this scenario");
                }
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    Scalar v = parse_scalar_flag(fields[i], "--vector");
                    if (i < static_cast<std::size_t>(scenario.n)) {
                        vec.singles.push_back(v);
                    } else {
                        vec.joints.push_back(v);
                    }
                }
                config["vector"] = vector_text;
            } else {
                throw bellsets::Error("polytope membership needs --vector or --angles");
            }
            return run_command("polytope membership", options, config, [&] {
                auto verdict = bellsets::polytope::membership(scenario, vec);
                CommandOutcome outcome;
                outcome.result = json{{"membership", membership_json(verdict)},
                                      {"vector", correlation_json(vec)}};
                if (scenario_name == "ch") {
                    outcome.result["ch_facet_value"] =
                        report::scalar_json(bellsets::polytope::ch_facet_value(vec));
                }
                if (scenario_name == "pair") {
                    json conditions = json::array();
                    for (const auto& [label, residual] : bellsets::polytope::boole_conditions_n2(vec)) {
                        conditions.push_back(json{{"condition", label}, {"residual", report::scalar_json(residual)}});
                    }
                    outcome.result["boole_conditions"] = conditions;
                }
                outcome.pass = verdict.inside;
                return outcome;
            });
        }

        if (poly_trivial->parsed()) {
            return run_command("polytope trivial", options, json::object(), [&] {
                auto facets = bellsets::polytope::exclusive_pair_facets();
                CommandOutcome outcome;
                json list = json::array();
                for (const auto& facet : facets) {
                    json coeffs = json::array();
                    for (const Rational& c : facet.coeffs) coeffs.push_back(report::rational_json(c));
                    list.push_back(json{{"label", facet.label},
                                        {"coeffs", coeffs},
                                        {"rhs", report::rational_json(facet.rhs)}});
                }
                outcome.result = json{{"facets", list}, {"count", facets.size()}};
                outcome.pass = facets.size() == 3;
                return outcome;
            });
        }

        if (quantum_max->parsed()) {
            json config{{"grid_step", grid_step}, {"refine_iters", refine_iters}, {"minimize", minimize}};
            return run_command("quantum maximize-ch", options, config, [&] {
                auto optimum = minimize ? bellsets::quantum::minimize_ch(grid_step, refine_iters)
                                        : bellsets::quantum::maximize_ch(grid_step, refine_iters);
                CommandOutcome outcome;
                outcome.result = json{
                    {"angles", {optimum.angles.a1, optimum.angles.a2, optimum.angles.b1, optimum.angles.b2}},
                    {"value", optimum.value},
                    {"correlation_vector",
                     correlation_json(bellsets::sampler::singlet_correlation_vector(optimum.angles))},
                };
                return outcome;
            });
        }

        if (uncertainty_check->parsed()) {
            json config{{"a", op_a}, {"b", op_b}, {"state", state_name}};
            return run_command("uncertainty check", options, config, [&] {
                auto a = named_operator(op_a);
                auto b = named_operator(op_b);
                auto psi = named_state(state_name);
                auto verdict = bellsets::uncertainty::check_uncertainty(a, b, psi);
                auto spec = bellsets::uncertainty::psi_from_operators(a, b, psi);
                CommandOutcome outcome;
                outcome.result = json{
                    {"lhs", verdict.lhs},
                    {"rhs", verdict.rhs},
                    {"slack", verdict.slack},
                    {"holds", verdict.holds},
                    {"psi_spec",
                     {{"z_max", report::scalar_json(spec.z_max())},
                      {"width", report::scalar_json(spec.width())}}},
                };
                outcome.pass = verdict.holds;
                return outcome;
            });
        }

        if (sample_single->parsed() || sample_multi->parsed()) {
            auto scenario = named_scenario(scenario_name);
            auto parse_dist = [&](const std::string& text) {
                if (text == "uniform") return bellsets::sampler::JointDistribution::uniform(scenario.n);
                if (text.rfind("point:", 0) == 0) {
                    return bellsets::sampler::JointDistribution::point_mass(
                        scenario.n, static_cast<std::uint32_t>(std::stoul(text.substr(6), nullptr, 2)));
                }
                if (text.rfind("weights:", 0) == 0) {
                    std::vector<std::pair<std::uint32_t, Rational>> weights;
                    for (const auto& item : split_csv(text.substr(8))) {
                        auto eq = item.find('=');
                        if (eq == std::string::npos) throw bellsets::Error("weights need BITS=p/q entries");
                        auto value = bellsets::parse_rational(item.substr(eq + 1));
                        if (!value) throw bellsets::Error("cannot parse weight '" + item + "'");
                        weights.emplace_back(static_cast<std::uint32_t>(std::stoul(item.substr(0, eq), nullptr, 2)),
                                             *value);
                    }
                    return bellsets::sampler::JointDistribution::from_weights(scenario.n, std::move(weights));
                }
                throw bellsets::Error("unknown distribution '" + text + "'");
            };

            if (sample_single->parsed()) {
                json config{{"scenario", scenario_name}, {"dist", dist_text}, {"size", sample_size}};
                return run_command("sample single", options, config, [&] {
                    auto result = bellsets::sampler::single_sample_run(parse_dist(dist_text), scenario,
                                                                       sample_size, options.seed);
                    CommandOutcome outcome;
                    outcome.result = json{
                        {"frequencies", correlation_json(result.freq.vec)},
                        {"sample_size", result.freq.sample_size},
                        {"membership", membership_json(result.verdict)},
                    };
                    outcome.pass = result.verdict.inside;
                    return outcome;
                });
            }

            json config{{"scenario", scenario_name}, {"source", source_text}, {"size", sample_size}};
            if (!angles_text.empty()) config["angles"] = angles_text;
            return run_command("sample multi", options, config, [&] {
                bellsets::sampler::PairwiseSource source;
                if (source_text == "singlet") {
                    auto angles = angles_text.empty() ? kDefaultAngles : parse_angles(angles_text);
                    source = bellsets::sampler::PairwiseSource::singlet(scenario, angles);
                } else if (source_text.rfind("point:", 0) == 0) {
                    source = bellsets::sampler::PairwiseSource::point_mass(
                        scenario, static_cast<std::uint32_t>(std::stoul(source_text.substr(6), nullptr, 2)));
                } else if (source_text.rfind("marginals:", 0) == 0) {
                    source = bellsets::sampler::PairwiseSource::marginals_of(parse_dist(source_text.substr(10)),
                                                                             scenario);
                } else {
                    throw bellsets::Error("unknown source '" + source_text + "'");
                }
                auto result = bellsets::sampler::multi_sample_run(source, scenario, sample_size, options.seed);
                CommandOutcome outcome;
                json residuals = json::array();
                for (const auto& [label, value] : result.facet_residuals) {
                    residuals.push_back(json{{"facet", label}, {"residual", report::scalar_json(value)}});
                }
                outcome.result = json{
                    {"frequencies", correlation_json(result.freq.vec)},
                    {"sample_size", result.freq.sample_size},
                    {"membership", membership_json(result.verdict)},
                    {"facet_residuals", residuals},
                };
                if (result.ch_value) outcome.result["ch_facet_value"] = report::scalar_json(*result.ch_value);
                outcome.pass = result.verdict.inside;
                return outcome;
            });
        }

        if (metaset_subset->parsed()) {
            json config{{"X", chi_x}, {"Y", chi_y}};
            if (!z_text.empty()) {
                config["Z"] = z_text;
            } else {
                config["a"] = op_a;
                config["b"] = op_b;
                config["state"] = state_name;
                config["trials"] = inclusion_trials;
            }
            return run_command("metaset subset", options, config, [&] {
                bellsets::ch74::ChiSpec chi(parse_scalar_flag(chi_x, "--X"), parse_scalar_flag(chi_y, "--Y"));
                bellsets::metaset::InclusionReport inclusion =
                    !z_text.empty()
                        ? bellsets::metaset::subset_check(chi, parse_scalar_flag(z_text, "--Z"))
                        : bellsets::metaset::sampled_subset_check(chi, named_operator(op_a), named_operator(op_b),
                                                                  named_state(state_name), inclusion_trials,
                                                                  options.seed);
                CommandOutcome outcome;
                outcome.result = json{
                    {"holds", inclusion.holds},
                    {"z_width", report::scalar_json(inclusion.z_width)},
                    {"chi_range",
                     {report::scalar_json(inclusion.chi_range.lo()), report::scalar_json(inclusion.chi_range.hi())}},
                    {"psi_range",
                     {report::scalar_json(inclusion.psi_range.lo()), report::scalar_json(inclusion.psi_range.hi())}},
                    {"samples_checked", inclusion.samples_checked},
                    {"escapes", inclusion.escapes},
                };
                if (inclusion.witness) outcome.result["witness"] = report::scalar_json(*inclusion.witness);
                outcome.pass = inclusion.holds;
                return outcome;
            });
        }
    } catch (const bellsets::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cerr << "error: no subcommand dispatched\n";
    return 2;
}
