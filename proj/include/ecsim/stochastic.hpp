#pragma once

// The two noise models driving collapse: the fixed-stake gambler's-ruin walk
// and the double-or-nothing martingale, plus trajectory generation and
// ensemble statistics. Both games are fair, so the absorption probability at
// x = 1 equals the starting population x0 (the collapse rule).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ecsim/errors.hpp"
#include "ecsim/qstate.hpp"
#include "ecsim/rng.hpp"

namespace ecsim {

enum class NoiseKind { fixed_stake, double_or_nothing };

struct NoiseModel {
    NoiseKind kind = NoiseKind::double_or_nothing;
    double stake = 0.0;           // fixed_stake only, in (0, 1/2]
    std::uint64_t rng_seed = 0;   // default stream for single-trajectory runs

    void validate() const {
        if (kind == NoiseKind::fixed_stake && !(stake > 0.0 && stake <= 0.5)) {
            throw std::invalid_argument("NoiseModel: fixed stake must lie in (0, 1/2]");
        }
    }
};

struct TrajectoryStep {
    double time;  // s, cumulative after this play
    double x;     // population after this play
    int sign;     // coin of this play, +1 means x gained
};

enum class Outcome { collapsed_to_zero, collapsed_to_one };

struct Trajectory {
    double x0;
    std::vector<TrajectoryStep> steps;
    Outcome outcome;
    double total_time;      // s
    std::uint64_t n_plays;
};

// A play that would overdraw either fortune is clamped to min(x, y), which
// makes the boundary absorbing while keeping the walk a martingale. Losing a
// clamped stake lands exactly on 0 or 1.
inline PopulationState step_fixed_stake(const PopulationState& p, double stake, int coin) {
    if (!(stake >= 0.0)) throw std::invalid_argument("step_fixed_stake: stake must be >= 0");
    if (coin != 1 && coin != -1) throw std::invalid_argument("step_fixed_stake: coin must be +1 or -1");
    const double s = std::min({stake, p.x, p.y});
    return coin > 0 ? PopulationState{p.x + s, p.y - s} : PopulationState{p.x - s, p.y + s};
}

struct DoubleOrNothingStep {
    PopulationState state;
    double duration;  // s
};

// The weaker branch stakes its whole population. The play lasts
// tau_c/max(x, y): the unique duration consistent with the differential
// stake rule delta = xy dt/tau_c.
inline DoubleOrNothingStep step_double_or_nothing(const PopulationState& p, double tau_c, int coin) {
    if (!(p.x > 0.0 && p.x < 1.0)) {
        throw std::invalid_argument("step_double_or_nothing: state is already collapsed");
    }
    if (!(tau_c > 0.0)) throw std::invalid_argument("step_double_or_nothing: tau_c must be > 0");
    if (coin != 1 && coin != -1) throw std::invalid_argument("step_double_or_nothing: coin must be +1 or -1");
    const double stake = std::min(p.x, p.y);
    const double duration = tau_c / std::max(p.x, p.y);
    const PopulationState next = coin > 0 ? PopulationState{p.x + stake, p.y - stake}
                                          : PopulationState{p.x - stake, p.y + stake};
    return {next, duration};
}

inline constexpr std::uint64_t fixed_stake_max_plays = 10'000'000;
// Each double-or-nothing play terminates with probability >= 1/2, so 200
// plays has leak probability < 2^-200; reaching the cap signals a broken RNG.
inline constexpr std::uint64_t double_or_nothing_max_plays = 200;

namespace detail {

// Core walk over x alone with y = 1 - x. All boundary-reaching updates are
// exact in floating point (the stake equals one of the fortunes), so
// termination tests are exact comparisons against 0 and 1.
template <class OnPlay>
double walk_terminal_x(NoiseKind kind, double stake, double x0, double tau_c, SplitMix64& rng,
                       std::uint64_t max_plays, OnPlay&& on_play) {
    double x = x0;
    double t = 0.0;
    for (std::uint64_t play = 1; play <= max_plays; ++play) {
        const double y = 1.0 - x;
        const double s = (kind == NoiseKind::fixed_stake) ? std::min({stake, x, y}) : std::min(x, y);
        const double dt =
            (kind == NoiseKind::fixed_stake) ? s * tau_c / (x * y) : tau_c / std::max(x, y);
        const int coin = rng.coin();
        x = (coin > 0) ? x + s : x - s;
        t += dt;
        on_play(play, t, x, coin);
        if (x == 0.0 || x == 1.0) return x;
    }
    if (kind == NoiseKind::fixed_stake) {
        throw numerical_error("run_fixed_stake: walk exceeded " +
                              std::to_string(fixed_stake_max_plays) +
                              " plays (stake too small for a terminating run)");
    }
    throw numerical_error("run_double_or_nothing: play cap exceeded; RNG defect suspected");
}

inline void validate_run_inputs(double x0, double tau_c) {
    if (!(x0 > 0.0 && x0 < 1.0)) throw std::invalid_argument("run: x0 must lie in (0, 1)");
    if (!(tau_c > 0.0) || !std::isfinite(tau_c)) {
        throw std::invalid_argument("run: tau_c must be positive and finite");
    }
}

}  // namespace detail

inline Trajectory run_fixed_stake(double x0, double stake, double tau_c, std::uint64_t seed) {
    detail::validate_run_inputs(x0, tau_c);
    if (!(stake > 0.0 && stake <= 0.5)) {
        throw std::invalid_argument("run_fixed_stake: stake must lie in (0, 1/2]");
    }
    Trajectory traj{x0, {}, Outcome::collapsed_to_zero, 0.0, 0};
    SplitMix64 rng(seed);
    const double xf = detail::walk_terminal_x(
        NoiseKind::fixed_stake, stake, x0, tau_c, rng, fixed_stake_max_plays,
        [&traj](std::uint64_t, double t, double x, int coin) {
            traj.steps.push_back({t, x, coin});
        });
    traj.outcome = xf == 1.0 ? Outcome::collapsed_to_one : Outcome::collapsed_to_zero;
    traj.total_time = traj.steps.back().time;
    traj.n_plays = traj.steps.size();
    return traj;
}

inline Trajectory run_double_or_nothing(double x0, double tau_c, std::uint64_t seed) {
    detail::validate_run_inputs(x0, tau_c);
    Trajectory traj{x0, {}, Outcome::collapsed_to_zero, 0.0, 0};
    SplitMix64 rng(seed);
    const double xf = detail::walk_terminal_x(
        NoiseKind::double_or_nothing, 0.0, x0, tau_c, rng, double_or_nothing_max_plays,
        [&traj](std::uint64_t, double t, double x, int coin) {
            traj.steps.push_back({t, x, coin});
        });
    traj.outcome = xf == 1.0 ? Outcome::collapsed_to_one : Outcome::collapsed_to_zero;
    traj.total_time = traj.steps.back().time;
    traj.n_plays = traj.steps.size();
    return traj;
}

// Two-branch average change of E = x(1-x) under a fluctuation of size stake;
// algebraically equal to -stake^2, so the average entanglement never grows.
inline double avg_entanglement_change(double x, double stake) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("avg_entanglement_change: x outside [0,1]");
    if (!(stake >= 0.0) || stake > std::min(x, 1.0 - x) + algebraic_tol) {
        throw std::invalid_argument("avg_entanglement_change: stake must lie in [0, min(x, 1-x)]");
    }
    const double up = (x + stake) * (1.0 - x - stake);
    const double down = (x - stake) * (1.0 - x + stake);
    return 0.5 * (up + down) - x * (1.0 - x);
}

struct Moment {
    double mean = std::numeric_limits<double>::quiet_NaN();
    // sample-std/sqrt(n); NaN when n < 2 (flagged undefined)
    double std_error = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

// Welford accumulator; deterministic under the fixed trajectory-index order.
struct RunningMoment {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v) {
        ++count;
        const double d = v - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (v - mean);
    }

    Moment finish() const {
        Moment out;
        if (count >= 1) out.mean = mean;
        if (count >= 2) {
            const double n = static_cast<double>(count);
            out.std_error = std::sqrt(m2 / (n - 1.0)) / std::sqrt(n);
        }
        return out;
    }
};

}  // namespace detail

struct EnsembleSummary {
    std::uint64_t n_trajectories = 0;
    Moment frac_to_one;        // mean of the {0,1} outcomes
    Moment mean_plays;
    Moment mean_total_time;    // s
    Moment mean_energy_drift;  // GeV; Tr(psi†Hpsi) change, E*((x-y)_final - (x-y)_0)
    // echoes
    NoiseModel model;
    double x0 = 0.0;
    double tau_c = 0.0;
    std::uint64_t master_seed = 0;
    double level_energy = 1.0;  // E used for drift bookkeeping, GeV
};

// Runs n independent trajectories; trajectory i uses the stream derived from
// (master_seed, i), so the summary is reproducible bit-for-bit and does not
// depend on any execution schedule.
inline EnsembleSummary ensemble_run(const NoiseModel& model, double x0, double tau_c,
                                    std::uint64_t n, std::uint64_t master_seed,
                                    double level_energy = 1.0) {
    model.validate();
    detail::validate_run_inputs(x0, tau_c);
    if (n < 1) throw std::invalid_argument("ensemble_run: n must be >= 1");

    detail::RunningMoment ones, plays, times, drifts;
    const double e0 = 2.0 * x0 - 1.0;  // (x - y) initially
    for (std::uint64_t i = 0; i < n; ++i) {
        SplitMix64 rng(SplitMix64::derive(master_seed, i));
        std::uint64_t n_plays = 0;
        double total_time = 0.0;
        const double xf = detail::walk_terminal_x(
            model.kind, model.stake, x0, tau_c, rng,
            model.kind == NoiseKind::fixed_stake ? fixed_stake_max_plays
                                                 : double_or_nothing_max_plays,
            [&n_plays, &total_time](std::uint64_t play, double t, double, int) {
                n_plays = play;
                total_time = t;
            });
        ones.add(xf);
        plays.add(static_cast<double>(n_plays));
        times.add(total_time);
        drifts.add(level_energy * ((2.0 * xf - 1.0) - e0));
    }

    EnsembleSummary out;
    out.n_trajectories = n;
    out.frac_to_one = ones.finish();
    out.mean_plays = plays.finish();
    out.mean_total_time = times.finish();
    out.mean_energy_drift = drifts.finish();
    out.model = model;
    out.x0 = x0;
    out.tau_c = tau_c;
    out.master_seed = master_seed;
    out.level_energy = level_energy;
    return out;
}

}  // namespace ecsim
