#pragma once

// Deterministic (fixed-sign) nonlinear evolution: the collapse-time relation
// tau_c = hbar*eps/Delta^2, the nonlinear right-hand side in analytic and
// determinant-potential (numerically differentiated) form, and the population
// dynamics dx/dt = -xy/tau_c with its closed-form logistic solution.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ecsim/constants.hpp"
#include "ecsim/errors.hpp"
#include "ecsim/matrix2.hpp"
#include "ecsim/qstate.hpp"

namespace ecsim {

// Branch label for the fluctuating nonlinear term. `plus` selects
// hbar dpsi/dt = -iH psi + eta Det(psi†psi) H psi†^{-1}; for the population
// pair, `plus` is the printed direction dx/dt = -xy/tau_c.
enum class SignChoice : int { plus = +1, minus = -1 };

constexpr double sign_value(SignChoice s) { return static_cast<double>(static_cast<int>(s)); }

// H = E*sigma with sigma = diag(1, -1); traceless and Hermitian by construction.
struct Hamiltonian2 {
    double level_energy = 0.0;  // E, GeV

    Mat2 matrix() const { return Mat2::diag(cplx{level_energy}, cplx{-level_energy}); }
};

enum class DispersionRule {
    sqrt2_sum,   // sqrt(2)*E1 + sqrt(2)*E2 (default; contributions add, never cancel)
    quadrature,  // sqrt(2*(E1^2 + E2^2))
};

inline double total_dispersion(double e1, double e2, DispersionRule rule = DispersionRule::sqrt2_sum) {
    if (!(e1 >= 0.0) || !(e2 >= 0.0)) {
        throw std::domain_error("total_dispersion: per-particle energies must be >= 0");
    }
    const double sqrt2 = std::sqrt(2.0);
    return rule == DispersionRule::sqrt2_sum ? sqrt2 * e1 + sqrt2 * e2
                                             : std::sqrt(2.0 * (e1 * e1 + e2 * e2));
}

// tau_c = hbar*epsilon/delta^2 in seconds. delta == 0 returns +infinity,
// the no-collapse signal.
inline double collapse_time(double epsilon, double delta) {
    if (!(epsilon > 0.0)) throw std::domain_error("collapse_time: epsilon must be > 0");
    if (!(delta >= 0.0)) throw std::domain_error("collapse_time: delta must be >= 0");
    if (delta == 0.0) return std::numeric_limits<double>::infinity();
    return hbar_gev_s * epsilon / (delta * delta);
}

struct CollapseParameters {
    double epsilon;  // universal energy scale, GeV
    double e1;       // particle-1 level energy, GeV
    double e2;       // particle-2 level energy, GeV (0 = dispersionless)
    double delta;    // total dispersion, GeV
    double tau_c;    // collapse time, s
    double eta;      // E1/epsilon

    static CollapseParameters make(double epsilon, double e1, double e2 = 0.0,
                                   DispersionRule rule = DispersionRule::sqrt2_sum) {
        if (!(epsilon > 0.0)) throw std::domain_error("CollapseParameters: epsilon must be > 0");
        const double delta = total_dispersion(e1, e2, rule);
        return {epsilon, e1, e2, delta, collapse_time(epsilon, delta), e1 / epsilon};
    }
};

// hbar dpsi/dt = -iH psi + s*eta*Det(psi†psi) H psi†^{-1}, evaluated in the
// adjugate form Det(psi†psi) psi†^{-1} = Det(psi) adj(psi†). The adjugate form
// is polynomial in the entries, so the result is finite for every psi and the
// nonlinear term vanishes exactly on collapsed (singular) states.
inline Mat2 nonlinear_rhs(const PsiMatrix& psi, const Hamiltonian2& h, double eta, SignChoice s) {
    const Mat2 linear = cplx{0.0, -1.0} * (h.matrix() * psi);
    const Mat2 regularized = psi.det() * psi.adjoint().adjugate();
    return linear + (sign_value(s) * eta) * (h.matrix() * regularized);
}

// Same right-hand side obtained from the determinant potential: the branch-s
// equation reads hbar dpsi/dt = -s * epsilon * sigma * d/dpsi* Det(I + i s
// eta psi†psi). The conjugate-coordinate derivative d/dpsi* = (d/dRe +
// i d/dIm)/2 is taken by central differences entry by entry. Serves as the
// independent cross-check of nonlinear_rhs; at eta == 0 the potential
// prefactor epsilon = E/eta degenerates and the linear limit -iH psi is
// returned directly.
inline Mat2 geometric_rhs(const PsiMatrix& psi, const Hamiltonian2& h, double eta, SignChoice s,
                          double step = 1e-5) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw numerical_error("geometric_rhs: differentiation step must be positive and finite");
    }
    if (1.0 + step == 1.0) {
        throw numerical_error("geometric_rhs: differentiation step underflows");
    }
    if (eta == 0.0) {
        return cplx{0.0, -1.0} * (h.matrix() * psi);
    }

    const cplx nu = cplx{0.0, sign_value(s) * eta};
    const auto potential = [nu](const Mat2& m) {
        return (Mat2::identity() + nu * (m.adjoint() * m)).det();
    };

    Mat2 grad;
    for (int k = 0; k < 4; ++k) {
        Mat2 re_plus = psi, re_minus = psi, im_plus = psi, im_minus = psi;
        re_plus.e[k] += cplx{step, 0.0};
        re_minus.e[k] -= cplx{step, 0.0};
        im_plus.e[k] += cplx{0.0, step};
        im_minus.e[k] -= cplx{0.0, step};
        const cplx d_re = (potential(re_plus) - potential(re_minus)) / (2.0 * step);
        const cplx d_im = (potential(im_plus) - potential(im_minus)) / (2.0 * step);
        grad.e[k] = 0.5 * (d_re + cplx{0.0, 1.0} * d_im);
    }

    const double epsilon = h.level_energy / eta;
    return (-sign_value(s) * epsilon) * (Mat2::sigma_z() * grad);
}

// |Det(I + nu A) - (1 + nu Tr A + nu^2 Det A)|; the 2x2 determinant identity
// makes this pure roundoff.
inline double det_identity_residual(const Mat2& a, cplx nu) {
    const cplx lhs = (Mat2::identity() + nu * a).det();
    const cplx rhs = 1.0 + nu * a.trace() + nu * nu * a.det();
    return std::abs(lhs - rhs);
}

struct PopulationRate {
    double dx_dt;
    double dy_dt;
};

// (dx/dt, dy/dt) = (-s*xy/tau_c, +s*xy/tau_c); the rates cancel exactly, and
// x = 0 and x = 1 are exact fixed points.
inline PopulationRate population_rhs(const PopulationState& p, double tau_c, SignChoice s) {
    if (!(tau_c > 0.0)) throw std::domain_error("population_rhs: tau_c must be > 0");
    const double flow = sign_value(s) * p.x * p.y / tau_c;
    return {-flow, flow};
}

// x(t) = x0 / (x0 + (1 - x0) e^{t/tau_c}), the closed-form solution of the
// population pair; at x0 = 1/2 it reduces to 1/(1 + e^{t/tau_c}).
inline double closed_form_x(double x0, double t, double tau_c) {
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::domain_error("closed_form_x: x0 must lie in [0,1]");
    if (!(tau_c > 0.0)) throw std::domain_error("closed_form_x: tau_c must be > 0");
    const double growth = (1.0 - x0) * std::exp(t / tau_c);
    if (std::isinf(growth)) return 0.0;
    return x0 / (x0 + growth);
}

// Classical fixed-step 4th-order integration of the population pair. The
// default step is tau_c/100; larger steps are a misconfiguration.
inline PopulationState evolve_population(const PopulationState& p0, double tau_c, SignChoice s,
                                         double t, double step = 0.0) {
    if (!(tau_c > 0.0)) throw std::invalid_argument("evolve_population: tau_c must be > 0");
    if (!(t >= 0.0)) throw std::invalid_argument("evolve_population: t must be >= 0");
    if (step == 0.0) step = tau_c / 100.0;
    if (!(step > 0.0) || step > tau_c / 100.0) {
        throw std::invalid_argument("evolve_population: step must lie in (0, tau_c/100]");
    }

    const double sgn = sign_value(s);
    const auto rate = [sgn, tau_c](double x, double y) { return -sgn * x * y / tau_c; };

    double x = p0.x;
    double y = p0.y;
    double remaining = t;
    while (remaining > 0.0) {
        const double h = std::min(step, remaining);
        const double k1 = rate(x, y);
        const double k2 = rate(x + 0.5 * h * k1, y - 0.5 * h * k1);
        const double k3 = rate(x + 0.5 * h * k2, y - 0.5 * h * k2);
        const double k4 = rate(x + h * k3, y - h * k3);
        const double dx = h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x += dx;
        y -= dx;
        remaining -= h;
    }
    return {x, y};
}

// Tr(psi† H psi); real for Hermitian H, and E*(x - y) on diagonal psi.
inline double energy_expectation(const PsiMatrix& psi, const Hamiltonian2& h) {
    return (psi.adjoint() * h.matrix() * psi).trace().real();
}

}  // namespace ecsim
