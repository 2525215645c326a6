#pragma once

// Command-line front end: evolve | ensemble | bounds | verify. Parsing is
// CLI11 with an optional key=value config file per subcommand (command-line
// flags win, unknown keys are rejected). Exit codes: 0 success, 2 invalid
// input, 3 numerical failure (including failed verification), 4 I/O failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecsim/pipelines.hpp"
#include "ecsim/verify.hpp"

namespace ecsim {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid_input = 2;
inline constexpr int exit_numerical = 3;
inline constexpr int exit_io = 4;

// Bare filenames land in ECSIM_OUTPUT_DIR when that is set; paths containing
// a directory separator are used as given.
inline std::string resolve_output_path(const std::string& path) {
    if (path.empty() || path.find('/') != std::string::npos) return path;
    const char* dir = std::getenv("ECSIM_OUTPUT_DIR");
    if (dir != nullptr && *dir != '\0') return std::string(dir) + "/" + path;
    return path;
}

namespace cli_detail {

// Either --tau-c directly, or --epsilon with level energies; combining both
// is rejected at parse time via excludes().
struct TimingArgs {
    double tau_c = 1.0;
    double epsilon = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    std::string rule = "sqrt2_sum";
    bool epsilon_given = false;

    double resolve() const {
        if (!epsilon_given) return tau_c;
        return CollapseParameters::make(epsilon, e1, e2, parse_rule(rule)).tau_c;
    }
};

struct OutputArgs {
    std::string path;
    std::string format = "csv";
    bool timestamp = false;
};

inline void add_output_options(CLI::App* sub, OutputArgs& out) {
    sub->add_option("-o,--output", out.path, "write the report to this file");
    sub->add_option("--format", out.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timestamp", out.timestamp,
                  "include a UTC timestamp in JSON output (off by default for "
                  "reproducibility)");
}

inline void add_timing_options(CLI::App* sub, TimingArgs& t) {
    auto* tau = sub->add_option("--tau-c", t.tau_c, "collapse time in seconds (default 1)");
    auto* eps = sub->add_option("--epsilon", t.epsilon,
                                "universal energy scale in GeV; tau_c is then "
                                "hbar*epsilon/delta^2");
    auto* e1 = sub->add_option("--e1", t.e1, "particle-1 level energy in GeV");
    auto* e2 = sub->add_option("--e2", t.e2, "particle-2 level energy in GeV (default 0)");
    sub->add_option("--dispersion-rule", t.rule, "total dispersion rule: sqrt2_sum or quadrature")
        ->check(CLI::IsMember({"sqrt2_sum", "quadrature"}));
    tau->excludes(eps)->excludes(e1)->excludes(e2);
    eps->needs(e1);
    e1->needs(eps);
    sub->parse_complete_callback([&t, eps] { t.epsilon_given = eps->count() > 0; });
}

inline void configure_subcommand(CLI::App* sub) {
    // The value is consumed by expand_config_args() before parsing; this
    // registration only documents the option in --help.
    sub->add_option("--config",
                    "read options from a key=value file (explicit flags override it)");
}

// Reads a flat key=value file ('#' comments and blank lines ignored) and
// returns the pairs as "--key=value" tokens.
inline std::vector<std::string> config_file_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    auto trim = [](const std::string& s) {
        const char* ws = " \t\r";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(ws) - b + 1);
    };
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line '" + stripped + "' is not key=value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line '" + stripped + "' has an empty key");
        if (key == "config")
            throw std::invalid_argument("config files cannot set 'config'");
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

// Expands every "--config FILE" / "--config=FILE" into the file's pairs as
// --key=value tokens placed directly after the subcommand name. Options take
// the last value given, so tokens typed on the command line win over the
// file, and unknown keys fail parsing like any unknown option.
inline std::vector<std::string> expand_config_args(const std::vector<std::string>& args) {
    std::vector<std::string> files;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw std::invalid_argument("--config requires a file path");
            files.push_back(args[++i]);
        } else if (args[i].rfind("--config=", 0) == 0) {
            files.push_back(args[i].substr(9));
        } else {
            rest.push_back(args[i]);
        }
    }
    if (files.empty()) return rest;
    std::vector<std::string> expanded;
    for (const std::string& f : files) {
        const std::vector<std::string> tokens = config_file_tokens(f);
        expanded.insert(expanded.end(), tokens.begin(), tokens.end());
    }
    auto pos = rest.begin();
    while (pos != rest.end() && !pos->empty() && (*pos)[0] == '-') ++pos;
    if (pos != rest.end()) ++pos;  // step past the subcommand name
    rest.insert(pos, expanded.begin(), expanded.end());
    return rest;
}

inline void deliver(const Report& report, const OutputArgs& out, std::ostream& os) {
    if (out.path.empty()) {
        os << (parse_format(out.format) == OutputFormat::csv ? render_csv(report.table)
                                                             : render_json(report));
        for (const std::string& w : report.warnings) os << "warning: " << w << '\n';
        return;
    }
    const std::string path = resolve_output_path(out.path);
    emit_report(report, parse_format(out.format), path);
    render_summary(report, os);
    os << "wrote " << path << '\n';
}

}  // namespace cli_detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"two-level entangled-state collapse: deterministic evolution, "
                 "stochastic collapse ensembles, and laboratory bounds on the "
                 "universal energy scale"};
    app.set_version_flag("--version", std::string(artifact_version));
    app.require_subcommand(1);
    // Repeated options keep the last value, so command-line flags override
    // config-file tokens injected ahead of them (see expand_config_args).
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // evolve
    auto* evolve = app.add_subcommand("evolve", "integrate the deterministic population drift "
                                                "and compare against the logistic solution");
    cli_detail::TimingArgs ev_time;
    cli_detail::OutputArgs ev_out;
    double ev_x0 = 0.5;
    std::string ev_sign = "plus";
    double ev_tmax = 10.0;
    int ev_points = 1000;
    double ev_step = 0.0;
    evolve->add_option("--x0", ev_x0, "initial population of the first branch (default 0.5)")
        ->check(CLI::Range(0.0, 1.0));
    evolve->add_option("--sign", ev_sign, "branch of the nonlinear term: plus decays x, minus grows it")
        ->check(CLI::IsMember({"plus", "minus"}));
    evolve->add_option("--t-max", ev_tmax, "integration horizon in units of tau_c (default 10)");
    evolve->add_option("--points", ev_points, "number of sample intervals (default 1000)");
    evolve->add_option("--step", ev_step, "integrator step in seconds (default tau_c/100)");
    cli_detail::add_timing_options(evolve, ev_time);
    cli_detail::add_output_options(evolve, ev_out);
    cli_detail::configure_subcommand(evolve);

    // ensemble
    auto* ensemble = app.add_subcommand("ensemble", "run independent collapse trajectories and "
                                                    "summarize outcome statistics");
    cli_detail::TimingArgs en_time;
    cli_detail::OutputArgs en_out;
    std::string en_model = "double_or_nothing";
    double en_stake = 0.01;
    double en_x0 = 0.5;
    std::uint64_t en_n = 10000;
    std::uint64_t en_seed = 1;
    double en_level_energy = 1.0;
    std::string en_dump;
    std::uint64_t en_dump_index = 0;
    ensemble->add_option("--model", en_model, "noise model: fixed_stake or double_or_nothing")
        ->check(CLI::IsMember({"fixed_stake", "double_or_nothing"}));
    ensemble->add_option("--stake", en_stake, "fixed stake in (0, 1/2] (fixed_stake model only)");
    ensemble->add_option("--x0", en_x0, "initial population of the first branch (default 0.5)")
        ->check(CLI::Range(0.0, 1.0));
    ensemble->add_option("--n", en_n, "number of trajectories (default 10000)");
    ensemble->add_option("--seed", en_seed, "master seed; trajectory i uses the derived stream i");
    ensemble->add_option("--level-energy", en_level_energy,
                         "level energy E in GeV for the energy-drift column (default 1)");
    ensemble->add_option("--dump-trajectory", en_dump,
                         "also write one full trajectory (play,time_s,x,sign) to this file");
    ensemble->add_option("--dump-index", en_dump_index,
                         "which trajectory to dump (default 0)");
    cli_detail::add_timing_options(ensemble, en_time);
    cli_detail::add_output_options(ensemble, en_out);
    cli_detail::configure_subcommand(ensemble);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "laboratory lower bounds on the universal scale "
                                                "and the derived violation prediction");
    cli_detail::OutputArgs bo_out;
    std::string bo_system = "kaon";
    double bo_splitting = 0.0;
    double bo_tau = 0.0;
    double bo_gamma = 0.0;
    double bo_gamma_c = 0.5;
    std::string bo_label = "custom";
    bounds->add_option("--system", bo_system, "kaon, b_meson, or custom")
        ->check(CLI::IsMember({"kaon", "b_meson", "custom"}));
    bounds->add_option("--splitting", bo_splitting, "custom system: level splitting in GeV");
    bounds->add_option("--tau", bo_tau, "custom system: survival time probed, in seconds");
    bounds->add_option("--gamma", bo_gamma, "custom system: observed violation parameter");
    bounds->add_option("--gamma-c", bo_gamma_c, "order-unity violation threshold (default 0.5)");
    bounds->add_option("--label", bo_label, "custom system: row label");
    cli_detail::add_output_options(bounds, bo_out);
    cli_detail::configure_subcommand(bounds);

    // verify
    auto* verify = app.add_subcommand("verify", "run the self-verification suite and print one "
                                                "pass/fail line per check");
    cli_detail::OutputArgs ve_out;
    std::uint64_t ve_seed = default_verification_seed;
    verify->add_option("--seed", ve_seed, "master seed for the statistical checks");
    cli_detail::add_output_options(verify, ve_out);
    cli_detail::configure_subcommand(verify);

    try {
        const std::vector<std::string> args =
            cli_detail::expand_config_args(std::vector<std::string>(argv + 1, argv + argc));
        std::vector<const char*> cargv;
        cargv.reserve(args.size() + 1);
        cargv.push_back(argv[0]);
        for (const std::string& a : args) cargv.push_back(a.c_str());
        app.parse(static_cast<int>(cargv.size()), cargv.data());

        if (evolve->parsed()) {
            const double tau_c = ev_time.resolve();
            const SignChoice sign = ev_sign == "plus" ? SignChoice::plus : SignChoice::minus;
            const Report report =
                evolve_report(ev_x0, tau_c, sign, ev_tmax, ev_points, ev_step, ev_out.timestamp);
            cli_detail::deliver(report, ev_out, out);
            return exit_ok;
        }

        if (ensemble->parsed()) {
            const double tau_c = en_time.resolve();
            NoiseModel model;
            model.kind = parse_model(en_model);
            model.stake = model.kind == NoiseKind::fixed_stake ? en_stake : 0.0;
            const double level_energy =
                en_time.epsilon_given && en_time.e1 > 0.0 ? en_time.e1 : en_level_energy;
            const EnsembleSummary summary =
                ensemble_run(model, en_x0, tau_c, en_n, en_seed, level_energy);
            const Report report = ensemble_report(summary, en_out.timestamp);
            cli_detail::deliver(report, en_out, out);
            if (!en_dump.empty()) {
                const std::uint64_t traj_seed = SplitMix64::derive(en_seed, en_dump_index);
                const Trajectory traj =
                    model.kind == NoiseKind::fixed_stake
                        ? run_fixed_stake(en_x0, model.stake, tau_c, traj_seed)
                        : run_double_or_nothing(en_x0, tau_c, traj_seed);
                const Report dump =
                    trajectory_report(traj, tau_c, model, traj_seed, en_out.timestamp);
                const std::string dump_path = resolve_output_path(en_dump);
                emit_report(dump, parse_format(en_out.format), dump_path);
                out << "wrote " << dump_path << '\n';
            }
            return exit_ok;
        }

        if (bounds->parsed()) {
            Report report;
            if (bo_system == "b_meson") {
                report = prediction_report({b_meson_prediction(DispersionRule::sqrt2_sum),
                                            b_meson_prediction(DispersionRule::quadrature)},
                                           bo_out.timestamp);
            } else {
                const BoundInputs inputs = bo_system == "kaon"
                                               ? presets::kaon()
                                               : BoundInputs{bo_label, bo_splitting, bo_tau,
                                                             bo_gamma, bo_gamma_c};
                report = bounds_report({compute_bound(inputs, DispersionRule::sqrt2_sum),
                                        compute_bound(inputs, DispersionRule::quadrature)},
                                       bo_out.timestamp);
            }
            cli_detail::deliver(report, bo_out, out);
            return exit_ok;
        }

        // verify
        const std::vector<CheckResult> results = run_verification(ve_seed);
        for (const CheckResult& r : results) {
            out << (r.passed ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << '\n';
        }
        const bool ok = all_passed(results);
        out << (ok ? "all checks passed" : "VERIFICATION FAILED") << '\n';
        if (!ve_out.path.empty()) {
            Report report;
            report.table.header = {"name", "passed", "detail"};
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const CheckResult& r : results) {
                report.table.rows.push_back({r.name, r.passed ? "true" : "false", r.detail});
                rows.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            }
            nlohmann::ordered_json j = report_envelope(ve_seed, ve_out.timestamp);
            j["config"] = {{"command", "verify"}};
            j["results"] = std::move(rows);
            j["warnings"] = report.warnings;
            report.body = std::move(j);
            emit_report(report, parse_format(ve_out.format), resolve_output_path(ve_out.path));
        }
        return ok ? exit_ok : exit_numerical;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << std::string(artifact_version) << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const numerical_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_input;
    }
}

}  // namespace ecsim
