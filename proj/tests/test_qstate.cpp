#include <catch2/catch_amalgamated.hpp>

#include "ecsim/qstate.hpp"
#include "ecsim/rng.hpp"
#include "ecsim/sampling.hpp"
#include "test_support.hpp"

using ecsim::cplx;
using ecsim::Mat2;

TEST_CASE("make_entangled normalizes amplitudes") {
    const ecsim::EntangledState s = ecsim::make_entangled(cplx{3.0}, cplx{4.0});
    const ecsim::PopulationState p = ecsim::population_of(s);
    REQUIRE(p.x == Catch::Approx(0.36).margin(1e-15));
    REQUIRE(p.y == Catch::Approx(0.64).margin(1e-15));
    REQUIRE(p.x + p.y == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("make_entangled rejects degenerate input") {
    REQUIRE_THROWS_AS(ecsim::make_entangled(cplx{0.0}, cplx{0.0}), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(ecsim::make_entangled(cplx{nan, 0.0}, cplx{1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(
        ecsim::make_entangled(cplx{std::numeric_limits<double>::infinity(), 0.0}, cplx{1.0}),
        std::invalid_argument);
}

TEST_CASE("make_population validates the pair") {
    REQUIRE_THROWS_AS(ecsim::make_population(0.3, 0.6), std::invalid_argument);
    REQUIRE_THROWS_AS(ecsim::make_population(-0.1, 1.1), std::invalid_argument);
    const ecsim::PopulationState p = ecsim::make_population(0.25, 0.75);
    REQUIRE(p.x == 0.25);
}

TEST_CASE("entanglement of a two-branch state is x*y") {
    const ecsim::EntangledState s = ecsim::make_entangled(cplx{3.0}, cplx{4.0});
    const double e = ecsim::entanglement_det(ecsim::to_psi_matrix(s));
    REQUIRE(e == Catch::Approx(0.36 * 0.64).margin(1e-15));
}

TEST_CASE("entanglement matches the eigenvalue-product oracle") {
    ecsim::SplitMix64 g(17);
    for (int k = 0; k < 1000; ++k) {
        const ecsim::PsiMatrix psi = ecsim::random_normalized_psi(g);
        const double lib = ecsim::entanglement_det(psi);
        const double ind = oracle::entanglement_eigenproduct(psi);
        REQUIRE(lib == Catch::Approx(ind).margin(1e-12));
        REQUIRE(lib >= 0.0);
        REQUIRE(lib <= 0.25 + 1e-12);  // normalized states cannot exceed 1/4
    }
}

TEST_CASE("entanglement entropy frozen values") {
    // x ln x + (1-x) ln(1-x), natural log
    REQUIRE(ecsim::entanglement_entropy(0.5) == Catch::Approx(-0.6931471805599453).margin(1e-15));
    REQUIRE(ecsim::entanglement_entropy(0.3) == Catch::Approx(-0.6108643020548935).margin(1e-14));
    REQUIRE(ecsim::entanglement_entropy(0.0) == 0.0);
    REQUIRE(ecsim::entanglement_entropy(1.0) == 0.0);
    // symmetric in x <-> 1-x
    REQUIRE(ecsim::entanglement_entropy(0.2) ==
            Catch::Approx(ecsim::entanglement_entropy(0.8)).margin(1e-15));
    REQUIRE_THROWS_AS(ecsim::entanglement_entropy(-0.01), std::domain_error);
    REQUIRE_THROWS_AS(ecsim::entanglement_entropy(1.01), std::domain_error);
}

TEST_CASE("unitary validation accepts rotations and rejects others") {
    REQUIRE_NOTHROW(ecsim::Unitary2::identity());
    const Mat2 not_unitary{{cplx{1.0}, cplx{1.0}, cplx{0.0}, cplx{1.0}}};
    REQUIRE_THROWS_AS(ecsim::Unitary2{not_unitary}, std::invalid_argument);

    ecsim::SplitMix64 g(19);
    for (int k = 0; k < 100; ++k) REQUIRE_NOTHROW(ecsim::random_unitary(g));
}

TEST_CASE("transform preserves norm and entanglement") {
    ecsim::SplitMix64 g(23);
    for (int k = 0; k < 200; ++k) {
        const ecsim::PsiMatrix psi = ecsim::random_normalized_psi(g);
        const ecsim::Unitary2 u = ecsim::random_unitary(g);
        const ecsim::Unitary2 v = ecsim::random_unitary(g);
        const ecsim::PsiMatrix moved = ecsim::transform(psi, u, v);
        REQUIRE(moved.frobenius_norm() == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(ecsim::entanglement_det(moved) ==
                Catch::Approx(ecsim::entanglement_det(psi)).margin(1e-12));
    }
}

TEST_CASE("reduced density of a two-branch state is diagonal with populations") {
    const ecsim::EntangledState s = ecsim::make_entangled(cplx{3.0}, cplx{4.0});
    const ecsim::PsiMatrix psi = ecsim::to_psi_matrix(s);
    for (const ecsim::Particle which : {ecsim::Particle::first, ecsim::Particle::second}) {
        const ecsim::DensityMatrix2 rho = ecsim::reduced_density(psi, which);
        const auto ev = rho.eigenvalues();
        REQUIRE(ev[0] == Catch::Approx(0.36).margin(1e-12));
        REQUIRE(ev[1] == Catch::Approx(0.64).margin(1e-12));
    }
}

TEST_CASE("reduced density of random states is a valid density matrix") {
    ecsim::SplitMix64 g(29);
    for (int k = 0; k < 200; ++k) {
        const ecsim::PsiMatrix psi = ecsim::random_normalized_psi(g);
        REQUIRE_NOTHROW(ecsim::reduced_density(psi, ecsim::Particle::first));
        REQUIRE_NOTHROW(ecsim::reduced_density(psi, ecsim::Particle::second));
        // both partial traces share the same spectrum for 2x2 psi
        const auto e1 = ecsim::reduced_density(psi, ecsim::Particle::first).eigenvalues();
        const auto e2 = ecsim::reduced_density(psi, ecsim::Particle::second).eigenvalues();
        REQUIRE(e1[0] == Catch::Approx(e2[0]).margin(1e-10));
        REQUIRE(e1[1] == Catch::Approx(e2[1]).margin(1e-10));
    }
}
