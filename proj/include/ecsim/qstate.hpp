#pragma once

// Domain types for two-level x two-level entangled pure states, the map to
// the 2x2 operator psi, and the two entanglement measures: the determinant
// measure E(psi) = Det(psi†psi) and the entanglement entropy S(x).

#include <cmath>
#include <stdexcept>
#include <string>

#include "ecsim/matrix2.hpp"

namespace ecsim {

// Absolute tolerance for exact algebraic identities in double precision.
inline constexpr double algebraic_tol = 1e-12;

// State alpha|1,1>|2,2> + beta|2,1>|1,2>; |alpha|^2 + |beta|^2 = 1.
struct EntangledState {
    cplx alpha;
    cplx beta;
};

// Operator image of a two-particle state vector; states of the entangled
// two-branch form occupy the diagonal. Arbitrary (including unnormalized or
// singular) matrices are legal inputs to every operation.
using PsiMatrix = Mat2;

// (x, y) = (|alpha|^2, |beta|^2); the collapse degrees of freedom.
struct PopulationState {
    double x;
    double y;
};

struct Unitary2 {
    Mat2 m;

    explicit Unitary2(const Mat2& u) : m(u) {
        const Mat2 gram = u.adjoint() * u;
        if (frobenius_distance(gram, Mat2::identity()) > algebraic_tol) {
            throw std::invalid_argument("Unitary2: matrix is not unitary within 1e-12");
        }
    }

    static Unitary2 identity() { return Unitary2(Mat2::identity()); }
};

struct DensityMatrix2 {
    Mat2 m;

    explicit DensityMatrix2(const Mat2& rho) : m(rho) {
        if (frobenius_distance(rho, rho.adjoint()) > algebraic_tol) {
            throw std::invalid_argument("DensityMatrix2: not Hermitian");
        }
        if (std::abs(rho.trace() - cplx{1.0}) > algebraic_tol) {
            throw std::invalid_argument("DensityMatrix2: trace is not 1");
        }
        if (hermitian_eigenvalues(rho)[0] < -algebraic_tol) {
            throw std::invalid_argument("DensityMatrix2: negative eigenvalue");
        }
    }

    std::array<double, 2> eigenvalues() const { return hermitian_eigenvalues(m); }
};

enum class Particle { first = 1, second = 2 };

// Rescales (alpha, beta) to unit norm, preserving the relative phase.
inline EntangledState make_entangled(cplx alpha, cplx beta) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
        !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw std::invalid_argument("make_entangled: amplitudes must be finite");
    }
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (norm == 0.0) {
        throw std::invalid_argument("make_entangled: both amplitudes are zero");
    }
    return {alpha / norm, beta / norm};
}

inline PopulationState population_of(const EntangledState& s) {
    return {std::norm(s.alpha), std::norm(s.beta)};
}

inline PopulationState make_population(double x, double y) {
    if (!(x >= 0.0) || !(y >= 0.0) || std::abs(x + y - 1.0) > algebraic_tol) {
        throw std::invalid_argument("make_population: need x,y >= 0 with x + y = 1");
    }
    return {x, y};
}

// The two-branch state maps onto the diagonal of psi.
inline PsiMatrix to_psi_matrix(const EntangledState& s) { return Mat2::diag(s.alpha, s.beta); }

// E(psi) = Det(psi†psi), computed as |Det psi|^2. Identical by
// Det(psi†psi) = |Det psi|^2 and nonnegative by construction.
inline double entanglement_det(const PsiMatrix& psi) { return std::norm(psi.det()); }

// S(x) = x log x + (1-x) log(1-x), natural log, with 0 log 0 = 0.
inline double entanglement_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("entanglement_entropy: x must lie in [0,1]");
    }
    const double a = (x > 0.0) ? x * std::log(x) : 0.0;
    const double b = (x < 1.0) ? (1.0 - x) * std::log(1.0 - x) : 0.0;
    return a + b;
}

// One-particle change of basis: psi -> U psi V†. Leaves E(psi) invariant.
inline PsiMatrix transform(const PsiMatrix& psi, const Unitary2& u, const Unitary2& v) {
    return u.m * psi * v.m.adjoint();
}

// psi psi† for particle 1, psi† psi for particle 2. For diagonal psi the
// eigenvalues are (x, y) and the von Neumann entropy equals -S(x).
inline DensityMatrix2 reduced_density(const PsiMatrix& psi, Particle particle) {
    const Mat2 rho = (particle == Particle::first) ? psi * psi.adjoint() : psi.adjoint() * psi;
    return DensityMatrix2(rho);
}

}  // namespace ecsim
