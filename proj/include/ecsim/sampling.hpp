#pragma once

// Random matrices, unitaries, and states for property sweeps.

#include <cmath>
#include <numbers>

#include "ecsim/matrix2.hpp"
#include "ecsim/qstate.hpp"
#include "ecsim/rng.hpp"

namespace ecsim {

inline cplx random_complex(SplitMix64& g, double magnitude) {
    return {magnitude * (2.0 * g.uniform01() - 1.0), magnitude * (2.0 * g.uniform01() - 1.0)};
}

// Entries with real and imaginary parts uniform in [-magnitude, magnitude].
inline Mat2 random_matrix(SplitMix64& g, double magnitude = 1.0) {
    return {{random_complex(g, magnitude), random_complex(g, magnitude),
             random_complex(g, magnitude), random_complex(g, magnitude)}};
}

// Random psi scaled to Tr(psi†psi) = 1.
inline PsiMatrix random_normalized_psi(SplitMix64& g) {
    Mat2 m = random_matrix(g);
    double norm = m.frobenius_norm();
    while (norm < 1e-6) {  // vanishing draws are astronomically rare; resample
        m = random_matrix(g);
        norm = m.frobenius_norm();
    }
    return m * (1.0 / norm);
}

// Nonsingular draw: resample until the smaller singular value stays above
// `min_singular` (sigma_min^2 = smaller eigenvalue of psi†psi).
inline PsiMatrix random_nonsingular_psi(SplitMix64& g, double min_singular = 1e-3) {
    for (;;) {
        const PsiMatrix psi = random_normalized_psi(g);
        const auto ev = hermitian_eigenvalues(psi.adjoint() * psi);
        if (ev[0] > min_singular * min_singular) return psi;
    }
}

// U(2) element from the phase/angle parametrization:
// e^{i phi} [[ cos t e^{i a}, sin t e^{i b}], [-sin t e^{-i b}, cos t e^{-i a}]].
inline Unitary2 random_unitary(SplitMix64& g) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double t = 0.5 * std::numbers::pi * g.uniform01();
    const double phi = two_pi * g.uniform01();
    const double a = two_pi * g.uniform01();
    const double b = two_pi * g.uniform01();
    const cplx phase = std::polar(1.0, phi);
    const double c = std::cos(t);
    const double s = std::sin(t);
    return Unitary2{Mat2{{phase * std::polar(c, a), phase * std::polar(s, b),
                          phase * -std::polar(s, -b), phase * std::polar(c, -a)}}};
}

}  // namespace ecsim
