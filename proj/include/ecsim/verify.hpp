#pragma once

// Self-verification: every check exercises a documented guarantee of the
// library end to end and reports one pass/fail line. The first twelve checks
// are the acceptance gate; the rest are extra invariants.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ecsim/constants.hpp"
#include "ecsim/dynamics.hpp"
#include "ecsim/phenomenology.hpp"
#include "ecsim/pipelines.hpp"
#include "ecsim/qstate.hpp"
#include "ecsim/sampling.hpp"
#include "ecsim/stochastic.hpp"

namespace ecsim {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

inline constexpr std::uint64_t default_verification_seed = 20260814;

// The first acceptance_check_count results from run_verification are the
// acceptance gate; the rest are additional invariants.
inline constexpr std::size_t acceptance_check_count = 12;

namespace checks {

inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t slot) {
    return SplitMix64::derive(master, 0xC0FFEE00ULL + slot);
}

// Absorption at x = 1 happens with probability x0 (the statistical collapse
// rule); four starting points, 5-sigma binomial window each.
inline CheckResult born_rule_frequency(std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t n = 100000;
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    bool ok = true;
    std::string detail;
    int slot = 0;
    for (const double x0 : {0.1, 0.3, 0.5, 0.7}) {
        const EnsembleSummary s = ensemble_run(model, x0, 1.0, n, sub_seed(seed, 10 + slot++));
        const double tol = 5.0 * std::sqrt(x0 * (1.0 - x0) / static_cast<double>(n));
        const double err = std::abs(s.frac_to_one.mean - x0);
        ok = ok && err < tol;
        if (!detail.empty()) detail += "; ";
        detail += "x0=" + format_double(x0) + ": |frac-x0|=" + format_double(err) +
                  " (tol " + format_double(tol) + ")";
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && elapsed < 10.0;
    return {"born_rule_frequency", ok, detail + "; elapsed " + format_double(elapsed) + " s (< 10)"};
}

// Balanced start ends in exactly one play; the skewed starts have known mean
// game lengths (2 plays from 0.3, 1.5 from 0.25).
inline CheckResult game_length_means(std::uint64_t seed) {
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    bool one_play = true;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const Trajectory t = run_double_or_nothing(0.5, 1.0, SplitMix64::derive(sub_seed(seed, 20), i));
        one_play = one_play && t.n_plays == 1;
    }
    const EnsembleSummary s3 = ensemble_run(model, 0.3, 1.0, 100000, sub_seed(seed, 21));
    const EnsembleSummary s25 = ensemble_run(model, 0.25, 1.0, 100000, sub_seed(seed, 22));
    const bool ok3 = std::abs(s3.mean_plays.mean - 2.0) < 0.05;
    const bool ok25 = std::abs(s25.mean_plays.mean - 1.5) < 0.05;
    return {"game_length_means", one_play && ok3 && ok25,
            std::string("x0=0.5 single-play: ") + (one_play ? "yes" : "NO") +
                "; mean plays x0=0.3: " + format_double(s3.mean_plays.mean) +
                " (want 2.00+-0.05); x0=0.25: " + format_double(s25.mean_plays.mean) +
                " (want 1.50+-0.05)"};
}

// Total collapse time: exactly 2*tau_c from the balanced start, and within
// the documented window from x0 = 0.3.
inline CheckResult collapse_time_totals(std::uint64_t seed) {
    const double tau_c = 1.0;
    bool exact = true;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const Trajectory t = run_double_or_nothing(0.5, tau_c, SplitMix64::derive(sub_seed(seed, 30), i));
        exact = exact && t.total_time == 2.0 * tau_c;
    }
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    const EnsembleSummary s = ensemble_run(model, 0.3, tau_c, 100000, sub_seed(seed, 31));
    const double mean_ratio = s.mean_total_time.mean / tau_c;
    const bool window = mean_ratio > 1.5 && mean_ratio < 3.0;
    return {"collapse_time_totals", exact && window,
            std::string("x0=0.5 time==2*tau_c: ") + (exact ? "yes" : "NO") +
                "; x0=0.3 mean time/tau_c: " + format_double(mean_ratio) + " (want (1.5, 3.0))"};
}

// Fixed-step integration of the population pair against the logistic
// solution over ten collapse times.
inline CheckResult integrator_matches_logistic(std::uint64_t) {
    const double x0 = 0.5;
    const double tau_c = 1.0;
    const int n_points = 1000;
    const double t_max = 10.0 * tau_c;
    const double dt = t_max / n_points;
    PopulationState state = make_population(x0, 1.0 - x0);
    double max_dev = 0.0;
    double sum_dev = 0.0;
    for (int i = 1; i <= n_points; ++i) {
        state = evolve_population(state, tau_c, SignChoice::plus, dt);
        const double dev = std::abs(state.x - closed_form_x(x0, dt * i, tau_c));
        max_dev = std::max(max_dev, dev);
        sum_dev += std::abs(state.x + state.y - 1.0);
    }
    const bool ok = max_dev < 1e-8 && sum_dev < 1e-10;
    return {"integrator_matches_logistic", ok,
            "max |x_numeric - x_closed| = " + format_double(max_dev) +
                " (tol 1e-08); worst |x+y-1| accumulation " + format_double(sum_dev)};
}

// The two-branch average of Det(psi†psi) changes by exactly -stake^2, and an
// ensemble's mean entanglement decreases play over play: exactly under the
// branch-weighted distribution, empirically while >= 1000 runs are alive.
inline CheckResult entropy_arrow(std::uint64_t seed) {
    SplitMix64 g(sub_seed(seed, 40));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = 0.05 + 0.9 * g.uniform01();
        const double stake = g.uniform01() * std::min(x, 1.0 - x);
        worst = std::max(worst, std::abs(avg_entanglement_change(x, stake) + stake * stake));
    }
    const bool identity_ok = worst <= 1e-12;

    // exact branch-weighted distribution of the double-or-nothing walk
    std::map<double, double> dist{{0.3, 1.0}};
    auto mean_ent = [](const std::map<double, double>& d) {
        double m = 0.0;
        for (const auto& [x, w] : d) m += w * x * (1.0 - x);
        return m;
    };
    bool exact_decrease = true;
    double prev = mean_ent(dist);
    for (int play = 0; play < 50; ++play) {
        std::map<double, double> next;
        for (const auto& [x, w] : dist) {
            if (x == 0.0 || x == 1.0) {
                next[x] += w;
                continue;
            }
            const double s = std::min(x, 1.0 - x);
            next[x + s] += 0.5 * w;
            next[x - s] += 0.5 * w;
        }
        dist = std::move(next);
        const double cur = mean_ent(dist);
        exact_decrease = exact_decrease && cur < prev;
        prev = cur;
    }

    // realized ensemble from x0 = 0.3
    const std::uint64_t n = 10000;
    std::vector<Trajectory> runs;
    runs.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        runs.push_back(run_double_or_nothing(0.3, 1.0, SplitMix64::derive(sub_seed(seed, 41), i)));
    }
    bool realized_decrease = true;
    double prev_mean = 0.3 * 0.7;
    std::size_t tested_plays = 0;
    for (std::size_t k = 1;; ++k) {
        std::uint64_t alive = 0;
        double total = 0.0;
        for (const Trajectory& t : runs) {
            if (t.n_plays > k) {
                ++alive;
                const double x = t.steps[k - 1].x;
                total += x * (1.0 - x);
            }
        }
        if (alive < 1000) break;
        const double cur = total / static_cast<double>(n);
        realized_decrease = realized_decrease && cur < prev_mean;
        prev_mean = cur;
        tested_plays = k;
    }

    return {"entropy_arrow", identity_ok && exact_decrease && realized_decrease,
            "max |avg change + stake^2| = " + format_double(worst) +
                " (tol 1e-12); exact-distribution mean strictly decreasing over 50 plays: " +
                (exact_decrease ? "yes" : "NO") + "; realized mean decreasing over first " +
                std::to_string(tested_plays) + " plays (>=1000 alive): " +
                (realized_decrease ? "yes" : "NO")};
}

// Det(I + nu A) = 1 + nu Tr A + nu^2 Det A for 2x2 matrices, to roundoff.
inline CheckResult det_expansion_identity(std::uint64_t seed) {
    SplitMix64 g(sub_seed(seed, 50));
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Mat2 a = random_matrix(g, 10.0);
        const cplx nu = std::polar(2.0 * g.uniform01(), two_pi * g.uniform01());
        worst = std::max(worst, det_identity_residual(a, nu));
    }
    return {"det_expansion_identity", worst < 1e-12,
            "max residual over 1000 draws (entries <= 10, |nu| <= 2): " + format_double(worst) +
                " (tol 1e-12)"};
}

// The explicit nonlinear right-hand side against the numerical gradient of
// the determinant potential, on both sign branches.
inline CheckResult rhs_forms_agree(std::uint64_t seed) {
    SplitMix64 g(sub_seed(seed, 60));
    const Hamiltonian2 h{1.0};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const PsiMatrix psi = random_nonsingular_psi(g);
        const double eta = 0.05 + 1.45 * g.uniform01();
        const SignChoice s = (i % 2 == 0) ? SignChoice::plus : SignChoice::minus;
        const Mat2 analytic = nonlinear_rhs(psi, h, eta, s);
        const Mat2 numeric = geometric_rhs(psi, h, eta, s, 1e-5);
        worst = std::max(worst, frobenius_distance(analytic, numeric) / analytic.frobenius_norm());
    }
    return {"rhs_forms_agree", worst < 1e-6,
            "max relative difference over 1000 states, both branches: " + format_double(worst) +
                " (tol 1e-06)"};
}

// Det(psi†psi) is unchanged by independent unitaries on either particle.
inline CheckResult entanglement_unitary_invariant(std::uint64_t seed) {
    SplitMix64 g(sub_seed(seed, 70));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const PsiMatrix psi = random_normalized_psi(g);
        const Unitary2 u = random_unitary(g);
        const Unitary2 v = random_unitary(g);
        worst = std::max(worst,
                         std::abs(entanglement_det(transform(psi, u, v)) - entanglement_det(psi)));
    }
    return {"entanglement_unitary_invariant", worst < 1e-12,
            "max |E(U psi V†) - E(psi)| over 1000 unitary pairs: " + format_double(worst) +
                " (tol 1e-12)"};
}

// The kaon bound lands within a factor of a few of the Planck energy over
// 8*pi, under either dispersion rule and either Planck-energy convention.
inline CheckResult planck_bound_window(std::uint64_t) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const DispersionRule rule : {DispersionRule::sqrt2_sum, DispersionRule::quadrature}) {
        const BoundResult b = compute_bound(presets::kaon(), rule);
        const double rounded = eight_pi_ratio(b.epsilon_min, planck_energy_rounded_gev);
        ok = ok && b.eight_pi_over_planck > 0.5 && b.eight_pi_over_planck < 5.0;
        ok = ok && rounded > 0.5 && rounded < 5.0;
        if (!detail.empty()) detail += "; ";
        detail += rule_name(rule) + ": 8pi*eps/E_p = " + format_double(b.eight_pi_over_planck) +
                  " (rounded E_p: " + format_double(rounded) + ")";
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && elapsed < 1.0;
    return {"planck_bound_window", ok,
            detail + "; window (0.5, 5); elapsed " + format_double(elapsed) + " s"};
}

// Saturating the kaon bound predicts a violation parameter of order 1e-5 for
// the B system.
inline CheckResult b_violation_prediction(std::uint64_t) {
    const auto start = std::chrono::steady_clock::now();
    const BranchingPrediction def = b_meson_prediction(DispersionRule::sqrt2_sum);
    const BranchingPrediction alt = b_meson_prediction(DispersionRule::quadrature);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = def.gamma_predicted > 0.5e-5 && def.gamma_predicted < 5e-5 && elapsed < 1.0;
    return {"b_violation_prediction", ok,
            "gamma = " + format_double(def.gamma_predicted) + " (window (0.5e-05, 5e-05)); " +
                "quadrature rule gives " + format_double(alt.gamma_predicted) + "; elapsed " +
                format_double(elapsed) + " s"};
}

// Fair-game property: the mean final energy Tr(psi†H psi) equals the initial
// one within 5 standard errors, under both noise models.
inline CheckResult energy_drift_unbiased(std::uint64_t seed) {
    const std::uint64_t n = 100000;
    bool ok = true;
    std::string detail;
    int slot = 0;
    for (const NoiseModel& model :
         {NoiseModel{NoiseKind::fixed_stake, 0.02, 0}, NoiseModel{NoiseKind::double_or_nothing, 0.0, 0}}) {
        const EnsembleSummary s = ensemble_run(model, 0.3, 1.0, n, sub_seed(seed, 80 + slot++));
        const double bound = 5.0 * s.mean_energy_drift.std_error;
        ok = ok && std::abs(s.mean_energy_drift.mean) < bound;
        if (!detail.empty()) detail += "; ";
        detail += model_name(model.kind) + ": |mean drift| = " +
                  format_double(std::abs(s.mean_energy_drift.mean)) + " (5 stderr = " +
                  format_double(bound) + ")";
    }
    return {"energy_drift_unbiased", ok, detail};
}

// Identical master seed must reproduce ensemble and trajectory output files
// byte for byte (timestamps suppressed).
inline CheckResult reproducible_outputs(std::uint64_t seed) {
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    const EnsembleSummary a = ensemble_run(model, 0.3, 1.0, 2000, sub_seed(seed, 90));
    const EnsembleSummary b = ensemble_run(model, 0.3, 1.0, 2000, sub_seed(seed, 90));
    const Report ra = ensemble_report(a, false);
    const Report rb = ensemble_report(b, false);
    const bool render_equal =
        render_csv(ra.table) == render_csv(rb.table) && render_json(ra) == render_json(rb);

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    const fs::path pa = dir / ("ecsim_repro_a_" + std::to_string(seed) + ".csv");
    const fs::path pb = dir / ("ecsim_repro_b_" + std::to_string(seed) + ".csv");
    emit_report(ra, OutputFormat::csv, pa.string());
    emit_report(rb, OutputFormat::csv, pb.string());
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const std::string file_a = slurp(pa);
    const bool file_equal = !file_a.empty() && file_a == slurp(pb);
    fs::remove(pa);
    fs::remove(pb);

    const Trajectory ta = run_double_or_nothing(0.3, 1.0, sub_seed(seed, 91));
    const Trajectory tb = run_double_or_nothing(0.3, 1.0, sub_seed(seed, 91));
    const bool traj_equal = render_json(trajectory_report(ta, 1.0, model, sub_seed(seed, 91))) ==
                            render_json(trajectory_report(tb, 1.0, model, sub_seed(seed, 91)));

    return {"reproducible_outputs", render_equal && file_equal && traj_equal,
            std::string("rendered bytes identical: ") + (render_equal ? "yes" : "NO") +
                "; files identical: " + (file_equal ? "yes" : "NO") +
                "; trajectory dumps identical: " + (traj_equal ? "yes" : "NO")};
}

// --- extra invariants beyond the acceptance gate ---

inline CheckResult state_normalization(std::uint64_t seed) {
    SplitMix64 g(sub_seed(seed, 100));
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const EntangledState s = make_entangled(random_complex(g, 3.0), random_complex(g, 3.0));
        const PopulationState p = population_of(s);
        worst = std::max(worst, std::abs(p.x + p.y - 1.0));
    }
    return {"state_normalization", worst <= 1e-12,
            "max |x + y - 1| after normalization: " + format_double(worst) + " (tol 1e-12)"};
}

inline CheckResult collapse_time_scaling(std::uint64_t) {
    const double base = collapse_time(1.0, 1e-3);
    const bool linear = collapse_time(2.0, 1e-3) == 2.0 * base;
    const bool quadratic = std::abs(collapse_time(1.0, 2e-3) - base / 4.0) <= 1e-12 * base;
    const double frozen = collapse_time(1e19, 1e-9);
    const bool magnitude = std::abs(frozen - 6.582119e12) <= 1e3;  // hbar*1e19/1e-18 s
    return {"collapse_time_scaling", linear && quadratic && magnitude,
            "tau_c(2 eps) = 2 tau_c: " + std::string(linear ? "yes" : "NO") +
                "; tau_c(2 delta) = tau_c/4: " + (quadratic ? "yes" : "NO") +
                "; tau_c(1e19 GeV, 1 eV) = " + format_double(frozen) + " s"};
}

// Collapsed (singular) states are fixed points of the nonlinear term: the
// right-hand side reduces exactly to the linear Schrodinger flow.
inline CheckResult collapsed_states_stationary(std::uint64_t seed) {
    SplitMix64 g(sub_seed(seed, 110));
    const Hamiltonian2 h{1.0};
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        // rank-one psi = outer product -> Det psi = 0
        const cplx a = random_complex(g, 1.0), b = random_complex(g, 1.0);
        const cplx c = random_complex(g, 1.0), d = random_complex(g, 1.0);
        const PsiMatrix psi{{a * c, a * d, b * c, b * d}};
        const Mat2 linear = cplx{0.0, -1.0} * (h.matrix() * psi);
        worst = std::max(worst, frobenius_distance(nonlinear_rhs(psi, h, 1.0, SignChoice::plus),
                                                   linear));
    }
    return {"collapsed_states_stationary", worst <= 1e-12,
            "max |rhs - linear| on rank-one states: " + format_double(worst) + " (tol 1e-12)"};
}

inline CheckResult unit_conversions_roundtrip(std::uint64_t) {
    const double mev = gev_to_mev(mev_to_gev(123.456));
    const double ev = 1e9 * ev_to_gev(1.0);  // 1 eV in GeV, scaled back
    const bool ok = std::abs(mev - 123.456) <= 1e-9 && std::abs(ev - 1.0) <= 1e-12 &&
                    std::abs(mev_to_gev(200.0) - 0.2) <= 1e-15;
    return {"unit_conversions_roundtrip", ok,
            "MeV round trip and 200 MeV = 0.2 GeV to machine precision"};
}

}  // namespace checks

inline std::vector<CheckResult> run_verification(std::uint64_t master_seed = default_verification_seed) {
    using Check = CheckResult (*)(std::uint64_t);
    constexpr Check sequence[] = {
        checks::born_rule_frequency,
        checks::game_length_means,
        checks::collapse_time_totals,
        checks::integrator_matches_logistic,
        checks::entropy_arrow,
        checks::det_expansion_identity,
        checks::rhs_forms_agree,
        checks::entanglement_unitary_invariant,
        checks::planck_bound_window,
        checks::b_violation_prediction,
        checks::energy_drift_unbiased,
        checks::reproducible_outputs,
        checks::state_normalization,
        checks::collapse_time_scaling,
        checks::collapsed_states_stationary,
        checks::unit_conversions_roundtrip,
    };
    std::vector<CheckResult> results;
    results.reserve(std::size(sequence));
    for (const Check check : sequence) results.push_back(check(master_seed));
    return results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

}  // namespace ecsim
