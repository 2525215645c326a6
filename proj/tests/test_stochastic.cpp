#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ecsim/stochastic.hpp"
#include "test_support.hpp"

using ecsim::NoiseKind;
using ecsim::NoiseModel;
using ecsim::PopulationState;

TEST_CASE("fixed-stake step moves the stake between branches") {
    const PopulationState p{0.3, 0.7};
    const PopulationState up = ecsim::step_fixed_stake(p, 0.1, +1);
    REQUIRE(up.x == Catch::Approx(0.4).margin(1e-15));
    const PopulationState down = ecsim::step_fixed_stake(p, 0.1, -1);
    REQUIRE(down.x == Catch::Approx(0.2).margin(1e-15));
    REQUIRE_THROWS_AS(ecsim::step_fixed_stake(p, -0.1, +1), std::invalid_argument);
    REQUIRE_THROWS_AS(ecsim::step_fixed_stake(p, 0.1, 0), std::invalid_argument);
}

TEST_CASE("fixed-stake step clamps at the boundary and lands exactly") {
    const PopulationState p{0.05, 0.95};
    REQUIRE(ecsim::step_fixed_stake(p, 0.1, -1).x == 0.0);  // loses its whole fortune
    REQUIRE(ecsim::step_fixed_stake(p, 0.1, +1).x == Catch::Approx(0.1).margin(1e-15));
    const PopulationState q{0.97, 0.03};
    REQUIRE(ecsim::step_fixed_stake(q, 0.1, +1).x == 1.0);  // wins the rest exactly
}

TEST_CASE("double-or-nothing step stakes the weaker branch") {
    const PopulationState p{0.3, 0.7};
    const auto up = ecsim::step_double_or_nothing(p, 1.0, +1);
    REQUIRE(up.state.x == Catch::Approx(0.6).margin(1e-15));
    REQUIRE(up.duration == Catch::Approx(1.0 / 0.7).epsilon(1e-15));
    const auto down = ecsim::step_double_or_nothing(p, 1.0, -1);
    REQUIRE(down.state.x == 0.0);

    REQUIRE_THROWS_AS(ecsim::step_double_or_nothing(PopulationState{0.0, 1.0}, 1.0, +1),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(ecsim::step_double_or_nothing(p, 0.0, +1), std::invalid_argument);
}

TEST_CASE("balanced start resolves in one play of duration two tau_c") {
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        const ecsim::Trajectory t = ecsim::run_double_or_nothing(0.5, 3.0, seed);
        REQUIRE(t.n_plays == 1);
        REQUIRE(t.total_time == 6.0);  // exactly 2 * tau_c
        REQUIRE((t.steps[0].x == 0.0 || t.steps[0].x == 1.0));
    }
}

TEST_CASE("trajectories terminate exactly on a boundary with increasing times") {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const ecsim::Trajectory t = ecsim::run_double_or_nothing(0.3, 2.0, seed);
        REQUIRE(t.steps.size() == t.n_plays);
        const double xf = t.steps.back().x;
        REQUIRE((xf == 0.0 || xf == 1.0));
        REQUIRE((t.outcome == ecsim::Outcome::collapsed_to_one) == (xf == 1.0));
        REQUIRE(t.steps[0].time == Catch::Approx(2.0 / 0.7).epsilon(1e-15));
        double prev = 0.0;
        for (const ecsim::TrajectoryStep& s : t.steps) {
            REQUIRE(s.time > prev);
            prev = s.time;
            REQUIRE(s.x >= 0.0);
            REQUIRE(s.x <= 1.0);
            REQUIRE((s.sign == 1 || s.sign == -1));
        }
    }
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const ecsim::Trajectory t = ecsim::run_fixed_stake(0.3, 0.1, 1.0, seed);
        const double xf = t.steps.back().x;
        REQUIRE((xf == 0.0 || xf == 1.0));
    }
}

TEST_CASE("identical seeds reproduce identical trajectories") {
    const ecsim::Trajectory a = ecsim::run_double_or_nothing(0.3, 1.0, 777);
    const ecsim::Trajectory b = ecsim::run_double_or_nothing(0.3, 1.0, 777);
    REQUIRE(a.n_plays == b.n_plays);
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        REQUIRE(a.steps[i].time == b.steps[i].time);
        REQUIRE(a.steps[i].x == b.steps[i].x);
        REQUIRE(a.steps[i].sign == b.steps[i].sign);
    }
}

TEST_CASE("input validation on runs") {
    REQUIRE_THROWS_AS(ecsim::run_double_or_nothing(0.0, 1.0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(ecsim::run_double_or_nothing(1.0, 1.0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(ecsim::run_double_or_nothing(0.5, 0.0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(ecsim::run_fixed_stake(0.5, 0.0, 1.0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(ecsim::run_fixed_stake(0.5, 0.6, 1.0, 1), std::invalid_argument);
    NoiseModel bad{NoiseKind::fixed_stake, 0.0, 0};
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.stake = 0.7;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("a microscopic stake exceeds the play cap") {
    // expected plays 0.25/1e-10 far beyond the cap; the walk cannot finish
    REQUIRE_THROWS_AS(ecsim::run_fixed_stake(0.5, 1e-5, 1.0, 12345), ecsim::numerical_error);
}

TEST_CASE("two-branch average entanglement change is minus stake squared") {
    for (const double x : {0.1, 0.25, 0.4, 0.5, 0.63, 0.9}) {
        for (const double frac : {0.0, 0.3, 0.7, 1.0}) {
            const double stake = frac * std::min(x, 1.0 - x);
            REQUIRE(ecsim::avg_entanglement_change(x, stake) ==
                    Catch::Approx(-stake * stake).margin(1e-15));
        }
    }
    REQUIRE_THROWS_AS(ecsim::avg_entanglement_change(0.3, 0.4), std::invalid_argument);
    REQUIRE_THROWS_AS(ecsim::avg_entanglement_change(-0.1, 0.0), std::invalid_argument);
}

TEST_CASE("ensemble from the balanced start is fully deterministic in shape") {
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    const ecsim::EnsembleSummary s = ecsim::ensemble_run(model, 0.5, 1.0, 10000, 2024);
    REQUIRE(s.mean_plays.mean == 1.0);
    REQUIRE(s.mean_plays.std_error == 0.0);
    REQUIRE(s.mean_total_time.mean == 2.0);
    const double tol = 5.0 * 0.5 / std::sqrt(10000.0);
    REQUIRE(std::abs(s.frac_to_one.mean - 0.5) < tol);
    // outcomes are 0/1 valued: stderr ~ 0.5/sqrt(n)
    REQUIRE(s.frac_to_one.std_error == Catch::Approx(0.5 / std::sqrt(10000.0)).epsilon(0.05));
}

TEST_CASE("ensemble statistics match the lattice oracle from x0 = 0.3") {
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    const ecsim::EnsembleSummary s = ecsim::ensemble_run(model, 0.3, 1.0, 20000, 515151);

    const double want_plays = oracle::expected_plays(3, 10);        // exactly 2
    const double want_time = oracle::expected_time_over_tau_c(3, 10);  // 745/252
    REQUIRE(want_plays == Catch::Approx(2.0).margin(1e-12));
    REQUIRE(want_time == Catch::Approx(2.9563492063492065).margin(1e-12));

    REQUIRE(std::abs(s.frac_to_one.mean - 0.3) < 5.0 * s.frac_to_one.std_error + 1e-12);
    REQUIRE(std::abs(s.mean_plays.mean - want_plays) < 5.0 * s.mean_plays.std_error);
    REQUIRE(std::abs(s.mean_total_time.mean - want_time) < 5.0 * s.mean_total_time.std_error);
}

TEST_CASE("quarter start has mean game length 1.5") {
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    const ecsim::EnsembleSummary s = ecsim::ensemble_run(model, 0.25, 1.0, 20000, 99);
    REQUIRE(oracle::expected_plays(1, 4) == Catch::Approx(1.5).margin(1e-12));
    REQUIRE(oracle::expected_time_over_tau_c(1, 4) == Catch::Approx(7.0 / 3.0).margin(1e-12));
    REQUIRE(std::abs(s.mean_plays.mean - 1.5) < 5.0 * s.mean_plays.std_error);
}

TEST_CASE("fixed-stake game length scales as x*y over stake squared") {
    const NoiseModel model{NoiseKind::fixed_stake, 0.01, 0};
    const ecsim::EnsembleSummary s = ecsim::ensemble_run(model, 0.5, 1.0, 400, 31337);
    REQUIRE(std::abs(s.mean_plays.mean - 2500.0) < 5.0 * s.mean_plays.std_error);
    REQUIRE(s.mean_plays.mean > 2000.0);
    REQUIRE(s.mean_plays.mean < 3000.0);
}

TEST_CASE("ensembles are reproducible and seed-sensitive") {
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    const ecsim::EnsembleSummary a = ecsim::ensemble_run(model, 0.3, 1.0, 3000, 7);
    const ecsim::EnsembleSummary b = ecsim::ensemble_run(model, 0.3, 1.0, 3000, 7);
    REQUIRE(a.frac_to_one.mean == b.frac_to_one.mean);
    REQUIRE(a.mean_plays.mean == b.mean_plays.mean);
    REQUIRE(a.mean_total_time.mean == b.mean_total_time.mean);
    REQUIRE(a.mean_energy_drift.mean == b.mean_energy_drift.mean);

    const ecsim::EnsembleSummary c = ecsim::ensemble_run(model, 0.3, 1.0, 3000, 8);
    REQUIRE(a.mean_total_time.mean != c.mean_total_time.mean);
}

TEST_CASE("single-trajectory ensembles flag the undefined standard error") {
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    const ecsim::EnsembleSummary s = ecsim::ensemble_run(model, 0.3, 1.0, 1, 5);
    REQUIRE(std::isfinite(s.frac_to_one.mean));
    REQUIRE(std::isnan(s.frac_to_one.std_error));
    REQUIRE_THROWS_AS(ecsim::ensemble_run(model, 0.3, 1.0, 0, 5), std::invalid_argument);
}

TEST_CASE("energy drift echoes the level energy") {
    const NoiseModel model{NoiseKind::double_or_nothing, 0.0, 0};
    const ecsim::EnsembleSummary e1 = ecsim::ensemble_run(model, 0.3, 1.0, 2000, 11, 1.0);
    const ecsim::EnsembleSummary e5 = ecsim::ensemble_run(model, 0.3, 1.0, 2000, 11, 5.0);
    REQUIRE(e5.mean_energy_drift.mean == Catch::Approx(5.0 * e1.mean_energy_drift.mean).margin(1e-12));
    REQUIRE(e1.level_energy == 1.0);
    REQUIRE(e5.level_energy == 5.0);
}
