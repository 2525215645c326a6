#include <catch2/catch_amalgamated.hpp>

#include "ecsim/matrix2.hpp"
#include "ecsim/rng.hpp"
#include "ecsim/sampling.hpp"

using ecsim::cplx;
using ecsim::Mat2;

TEST_CASE("arithmetic on known real matrices") {
    const Mat2 a{{cplx{1}, cplx{2}, cplx{3}, cplx{4}}};
    const Mat2 b{{cplx{5}, cplx{6}, cplx{7}, cplx{8}}};

    REQUIRE(a.trace() == cplx{5.0});
    REQUIRE(a.det() == cplx{-2.0});

    const Mat2 p = a * b;
    REQUIRE(p(0, 0) == cplx{19.0});
    REQUIRE(p(0, 1) == cplx{22.0});
    REQUIRE(p(1, 0) == cplx{43.0});
    REQUIRE(p(1, 1) == cplx{50.0});

    const Mat2 s = a + b;
    REQUIRE(s(0, 0) == cplx{6.0});
    const Mat2 d = b - a;
    REQUIRE(d(1, 1) == cplx{4.0});
    const Mat2 n = -a;
    REQUIRE(n(0, 0) == cplx{-1.0});
    REQUIRE((2.0 * a)(1, 0) == cplx{6.0});
}

TEST_CASE("complex determinant and trace") {
    const cplx i{0.0, 1.0};
    const Mat2 m{{i, cplx{1}, cplx{0}, i}};
    REQUIRE(m.det() == cplx{-1.0, 0.0});
    REQUIRE(m.trace() == cplx{0.0, 2.0});
}

TEST_CASE("adjoint, transpose, conjugate relations") {
    ecsim::SplitMix64 g(7);
    for (int k = 0; k < 100; ++k) {
        const Mat2 m = ecsim::random_matrix(g, 3.0);
        REQUIRE(ecsim::frobenius_distance(m.adjoint().adjoint(), m) == 0.0);
        REQUIRE(ecsim::frobenius_distance(m.transpose().conjugate(), m.adjoint()) == 0.0);
        // det(A†) = conj(det A)
        REQUIRE(std::abs(m.adjoint().det() - std::conj(m.det())) < 1e-12);
    }
}

TEST_CASE("adjugate gives the inverse times the determinant") {
    ecsim::SplitMix64 g(11);
    for (int k = 0; k < 100; ++k) {
        const Mat2 m = ecsim::random_matrix(g, 2.0);
        const Mat2 lhs = m * m.adjugate();
        const Mat2 want = m.det() * Mat2::identity();
        REQUIRE(ecsim::frobenius_distance(lhs, want) < 1e-12);
        // adj also commutes: adj(A) A = det(A) I
        REQUIRE(ecsim::frobenius_distance(m.adjugate() * m, want) < 1e-12);
    }
}

TEST_CASE("hermitian eigenvalues of diagonal and off-diagonal matrices") {
    const auto diag = ecsim::hermitian_eigenvalues(Mat2::diag(cplx{2.0}, cplx{3.0}));
    REQUIRE(diag[0] == Catch::Approx(2.0).margin(1e-15));
    REQUIRE(diag[1] == Catch::Approx(3.0).margin(1e-15));

    const Mat2 flip{{cplx{0}, cplx{1}, cplx{1}, cplx{0}}};
    const auto pair = ecsim::hermitian_eigenvalues(flip);
    REQUIRE(pair[0] == Catch::Approx(-1.0).margin(1e-15));
    REQUIRE(pair[1] == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("eigenvalue sum and product match trace and determinant") {
    ecsim::SplitMix64 g(13);
    for (int k = 0; k < 200; ++k) {
        const Mat2 m = ecsim::random_matrix(g, 2.0);
        const Mat2 h = m.adjoint() * m;  // Hermitian, nonnegative
        const auto ev = ecsim::hermitian_eigenvalues(h);
        REQUIRE(ev[0] + ev[1] == Catch::Approx(h.trace().real()).margin(1e-10));
        REQUIRE(ev[0] * ev[1] == Catch::Approx(h.det().real()).margin(1e-10));
        REQUIRE(ev[0] >= -1e-12);
    }
}

TEST_CASE("frobenius norm and finiteness") {
    REQUIRE(Mat2::identity().frobenius_norm() == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
    REQUIRE(Mat2::zero().frobenius_norm() == 0.0);

    Mat2 bad = Mat2::identity();
    REQUIRE(bad.is_finite());
    bad.e[2] = cplx{std::numeric_limits<double>::infinity(), 0.0};
    REQUIRE_FALSE(bad.is_finite());
    bad.e[2] = cplx{0.0, std::numeric_limits<double>::quiet_NaN()};
    REQUIRE_FALSE(bad.is_finite());
}

TEST_CASE("sigma_z convention") {
    const Mat2 sz = Mat2::sigma_z();
    REQUIRE(sz(0, 0) == cplx{1.0});
    REQUIRE(sz(1, 1) == cplx{-1.0});
    REQUIRE(sz(0, 1) == cplx{0.0});
    REQUIRE(sz(1, 0) == cplx{0.0});
}
