#pragma once

// Builders that turn domain results into Reports (table + JSON body). Both
// the command-line tool and the self-verification suite go through these, so
// what is checked is exactly what is shipped.

#include <cstdint>
#include <string>
#include <vector>

#include "ecsim/constants.hpp"
#include "ecsim/dynamics.hpp"
#include "ecsim/phenomenology.hpp"
#include "ecsim/report.hpp"
#include "ecsim/stochastic.hpp"

namespace ecsim {

inline std::string rule_name(DispersionRule rule) {
    return rule == DispersionRule::sqrt2_sum ? "sqrt2_sum" : "quadrature";
}

inline DispersionRule parse_rule(const std::string& name) {
    if (name == "sqrt2_sum") return DispersionRule::sqrt2_sum;
    if (name == "quadrature") return DispersionRule::quadrature;
    throw std::invalid_argument("unknown dispersion rule '" + name +
                                "' (expected sqrt2_sum or quadrature)");
}

inline std::string model_name(NoiseKind kind) {
    return kind == NoiseKind::fixed_stake ? "fixed_stake" : "double_or_nothing";
}

inline NoiseKind parse_model(const std::string& name) {
    if (name == "fixed_stake") return NoiseKind::fixed_stake;
    if (name == "double_or_nothing") return NoiseKind::double_or_nothing;
    throw std::invalid_argument("unknown noise model '" + name +
                                "' (expected fixed_stake or double_or_nothing)");
}

// Deterministic evolution sampled at n_points+1 equally spaced times in
// [0, t_max], with the matching logistic solution and deviation per row.
inline Report evolve_report(double x0, double tau_c, SignChoice sign, double t_max_over_tau_c,
                            int n_points, double step = 0.0, bool with_timestamp = false) {
    if (n_points < 1) throw std::invalid_argument("evolve_report: n_points must be >= 1");
    if (!(t_max_over_tau_c > 0.0)) {
        throw std::invalid_argument("evolve_report: t_max must be > 0");
    }

    Report report;
    report.table.header = {"t_s", "t_over_tau_c", "x_numeric", "y_numeric",
                           "x_closed_form", "abs_deviation"};

    const double t_max = t_max_over_tau_c * tau_c;
    const double dt = t_max / n_points;
    PopulationState state = make_population(x0, 1.0 - x0);
    double max_dev = 0.0;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i <= n_points; ++i) {
        if (i > 0) state = evolve_population(state, tau_c, sign, dt, step);
        const double t = dt * i;
        // the decaying branch follows x(t), the growing branch x(-t)
        const double closed = closed_form_x(x0, sign_value(sign) * t, tau_c);
        const double dev = std::abs(state.x - closed);
        max_dev = std::max(max_dev, dev);
        report.table.rows.push_back({format_double(t), format_double(t / tau_c),
                                     format_double(state.x), format_double(state.y),
                                     format_double(closed), format_double(dev)});
        rows.push_back({{"t_s", t},
                        {"t_over_tau_c", t / tau_c},
                        {"x_numeric", state.x},
                        {"y_numeric", state.y},
                        {"x_closed_form", closed},
                        {"abs_deviation", dev}});
    }

    nlohmann::ordered_json j = report_envelope(0, with_timestamp);
    j.erase("rng");  // deterministic command, no randomness involved
    j["config"] = {{"command", "evolve"},
                   {"x0", x0},
                   {"tau_c_s", tau_c},
                   {"sign", sign_value(sign)},
                   {"t_max_over_tau_c", t_max_over_tau_c},
                   {"n_points", n_points},
                   {"step_s", step == 0.0 ? tau_c / 100.0 : step}};
    j["results"] = {{"max_abs_deviation", max_dev}, {"samples", std::move(rows)}};
    j["warnings"] = report.warnings;
    report.body = std::move(j);
    return report;
}

// Single-row ensemble summary. The first five columns are the stable schema;
// later columns are informative extras.
inline Report ensemble_report(const EnsembleSummary& s, bool with_timestamp = false) {
    Report report;
    report.table.header = {"n",
                           "frac_to_one",
                           "stderr",
                           "mean_plays",
                           "mean_time_over_tau_c",
                           "stderr_plays",
                           "stderr_time_over_tau_c",
                           "mean_energy_drift_gev",
                           "stderr_energy_drift_gev",
                           "x0",
                           "tau_c_s",
                           "model",
                           "stake",
                           "master_seed"};
    report.table.rows.push_back({format_uint(s.n_trajectories),
                                 format_double(s.frac_to_one.mean),
                                 format_double(s.frac_to_one.std_error),
                                 format_double(s.mean_plays.mean),
                                 format_double(s.mean_total_time.mean / s.tau_c),
                                 format_double(s.mean_plays.std_error),
                                 format_double(s.mean_total_time.std_error / s.tau_c),
                                 format_double(s.mean_energy_drift.mean),
                                 format_double(s.mean_energy_drift.std_error),
                                 format_double(s.x0),
                                 format_double(s.tau_c),
                                 model_name(s.model.kind),
                                 format_double(s.model.stake),
                                 format_uint(s.master_seed)});

    nlohmann::ordered_json j = report_envelope(s.master_seed, with_timestamp);
    j["config"] = {{"command", "ensemble"},
                   {"model", model_name(s.model.kind)},
                   {"stake", s.model.stake},
                   {"x0", s.x0},
                   {"tau_c_s", s.tau_c},
                   {"n", s.n_trajectories},
                   {"level_energy_gev", s.level_energy}};
    auto moment = [](const Moment& m) {
        return nlohmann::ordered_json{{"mean", m.mean}, {"std_error", m.std_error}};
    };
    j["results"] = {{"frac_to_one", moment(s.frac_to_one)},
                    {"plays", moment(s.mean_plays)},
                    {"total_time_s", moment(s.mean_total_time)},
                    {"total_time_over_tau_c",
                     moment({s.mean_total_time.mean / s.tau_c,
                             s.mean_total_time.std_error / s.tau_c})},
                    {"energy_drift_gev", moment(s.mean_energy_drift)}};
    j["warnings"] = report.warnings;
    report.body = std::move(j);
    return report;
}

// Every recorded play of one trajectory: play index, cumulative time,
// population after the play, and the coin sign.
inline Report trajectory_report(const Trajectory& t, double tau_c, const NoiseModel& model,
                                std::uint64_t seed, bool with_timestamp = false) {
    Report report;
    report.table.header = {"play", "time_s", "x", "sign"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const TrajectoryStep& st = t.steps[i];
        report.table.rows.push_back({format_uint(i + 1), format_double(st.time),
                                     format_double(st.x), std::to_string(st.sign)});
        rows.push_back({{"play", i + 1}, {"time_s", st.time}, {"x", st.x}, {"sign", st.sign}});
    }

    nlohmann::ordered_json j = report_envelope(seed, with_timestamp);
    j["config"] = {{"command", "trajectory"},
                   {"model", model_name(model.kind)},
                   {"stake", model.stake},
                   {"x0", t.x0},
                   {"tau_c_s", tau_c}};
    j["results"] = {{"outcome", t.outcome == Outcome::collapsed_to_one ? 1 : 0},
                    {"n_plays", t.n_plays},
                    {"total_time_s", t.total_time},
                    {"plays", std::move(rows)}};
    j["warnings"] = report.warnings;
    report.body = std::move(j);
    return report;
}

// Lower bounds on the universal scale, one row per dispersion rule, with the
// 8*pi*epsilon/E_planck figure against both the precise and the rounded
// Planck energy.
inline Report bounds_report(const std::vector<BoundResult>& bounds, bool with_timestamp = false) {
    Report report;
    report.table.header = {"label",
                           "dispersion_rule",
                           "delta_gev",
                           "tau_c_min_s",
                           "epsilon_min_gev",
                           "epsilon_over_planck",
                           "eight_pi_epsilon_over_planck",
                           "eight_pi_epsilon_over_planck_1e19"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const BoundResult& b : bounds) {
        const double rounded_ratio = eight_pi_ratio(b.epsilon_min, planck_energy_rounded_gev);
        report.table.rows.push_back({b.inputs.label, rule_name(b.rule), format_double(b.delta),
                                     format_double(b.tau_c_min), format_double(b.epsilon_min),
                                     format_double(b.epsilon_over_planck),
                                     format_double(b.eight_pi_over_planck),
                                     format_double(rounded_ratio)});
        rows.push_back({{"label", b.inputs.label},
                        {"dispersion_rule", rule_name(b.rule)},
                        {"inputs",
                         {{"splitting_gev", b.inputs.splitting},
                          {"tau_s", b.inputs.tau},
                          {"gamma", b.inputs.gamma},
                          {"gamma_c", b.inputs.gamma_c}}},
                        {"delta_gev", b.delta},
                        {"tau_c_min_s", b.tau_c_min},
                        {"epsilon_min_gev", b.epsilon_min},
                        {"epsilon_over_planck", b.epsilon_over_planck},
                        {"eight_pi_epsilon_over_planck", b.eight_pi_over_planck},
                        {"eight_pi_epsilon_over_planck_1e19", rounded_ratio}});
    }

    nlohmann::ordered_json j = report_envelope(0, with_timestamp);
    j.erase("rng");
    j["config"] = {{"command", "bounds"}};
    j["constants"] = {{"hbar_gev_s", hbar_gev_s},
                      {"planck_energy_gev", planck_energy_gev},
                      {"planck_energy_rounded_gev", planck_energy_rounded_gev}};
    j["results"] = std::move(rows);
    j["warnings"] = report.warnings;
    report.body = std::move(j);
    return report;
}

// Violation-parameter predictions at an assumed epsilon; flags estimates
// beyond the linear regime as warnings.
inline Report prediction_report(const std::vector<BranchingPrediction>& preds,
                                bool with_timestamp = false) {
    Report report;
    report.table.header = {"label",        "dispersion_rule", "epsilon_gev", "delta_gev",
                           "tau_c_s",      "gamma_predicted", "exceeds_unity"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const BranchingPrediction& p : preds) {
        report.table.rows.push_back({p.inputs.label, rule_name(p.rule), format_double(p.epsilon),
                                     format_double(p.delta), format_double(p.tau_c),
                                     format_double(p.gamma_predicted),
                                     p.exceeds_unity ? "true" : "false"});
        rows.push_back({{"label", p.inputs.label},
                        {"dispersion_rule", rule_name(p.rule)},
                        {"inputs",
                         {{"splitting_gev", p.inputs.splitting},
                          {"tau_s", p.inputs.tau},
                          {"gamma_c", p.inputs.gamma_c}}},
                        {"epsilon_gev", p.epsilon},
                        {"delta_gev", p.delta},
                        {"tau_c_s", p.tau_c},
                        {"gamma_predicted", p.gamma_predicted},
                        {"exceeds_unity", p.exceeds_unity}});
        if (p.exceeds_unity) {
            report.warnings.push_back("prediction for '" + p.inputs.label +
                                      "' exceeds 1; linear estimate not valid");
        }
    }

    nlohmann::ordered_json j = report_envelope(0, with_timestamp);
    j.erase("rng");
    j["config"] = {{"command", "bounds"}};
    j["constants"] = {{"hbar_gev_s", hbar_gev_s},
                      {"planck_energy_gev", planck_energy_gev},
                      {"planck_energy_rounded_gev", planck_energy_rounded_gev}};
    j["results"] = std::move(rows);
    j["warnings"] = report.warnings;
    report.body = std::move(j);
    return report;
}

}  // namespace ecsim
