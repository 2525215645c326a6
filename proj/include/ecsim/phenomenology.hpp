#pragma once

// Laboratory bounds on the universal energy scale epsilon. A system whose
// superposition survives for a lifetime tau with violation parameter gamma
// forces tau_c >= gamma_c*tau/gamma, hence epsilon >= delta^2*tau_c/hbar.
// Saturating the bound in one system predicts the violation in another.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ecsim/constants.hpp"
#include "ecsim/dynamics.hpp"

namespace ecsim {

struct PhysicalConstants {
    double hbar = hbar_gev_s;                 // GeV s
    double planck_energy = planck_energy_gev; // GeV
};

// A two-level system probed for slow collapse. The levels sit at
// +-splitting/2 around their mean, so each branch energy is splitting/2.
struct BoundInputs {
    std::string label;
    double splitting;  // level splitting, GeV
    double tau;        // superposition survival time probed, s
    double gamma;      // observed violation parameter (0 = none observed yet)
    double gamma_c;    // violation produced when tau_c ~ gamma_c * tau / gamma

    void validate() const {
        if (!(splitting > 0.0) || !std::isfinite(splitting)) {
            throw std::invalid_argument("BoundInputs: splitting must be positive and finite");
        }
        if (!(tau > 0.0) || !std::isfinite(tau)) {
            throw std::invalid_argument("BoundInputs: tau must be positive and finite");
        }
        if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
            throw std::invalid_argument("BoundInputs: gamma must be >= 0 and finite");
        }
        if (!(gamma_c > 0.0) || !std::isfinite(gamma_c)) {
            throw std::invalid_argument("BoundInputs: gamma_c must be positive and finite");
        }
    }
};

inline double branch_energy(const BoundInputs& in) { return 0.5 * in.splitting; }

inline double system_dispersion(const BoundInputs& in, DispersionRule rule) {
    return total_dispersion(branch_energy(in), branch_energy(in), rule);
}

// tau_c must be at least gamma_c*tau/gamma or the violation would already
// exceed the observed gamma. gamma == 0 means no violation observed and the
// bound is +infinity (collapse indistinguishable from never).
inline double tau_c_lower_bound(const BoundInputs& in) {
    in.validate();
    if (in.gamma == 0.0) return std::numeric_limits<double>::infinity();
    return in.gamma_c * in.tau / in.gamma;
}

// Inverts tau_c = hbar*epsilon/delta^2 for the scale epsilon.
inline double epsilon_lower_bound(double delta, double tau_c_min, double hbar = hbar_gev_s) {
    if (!(delta > 0.0)) throw std::invalid_argument("epsilon_lower_bound: delta must be > 0");
    if (!(tau_c_min > 0.0)) throw std::invalid_argument("epsilon_lower_bound: tau_c_min must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("epsilon_lower_bound: hbar must be > 0");
    return delta * delta * tau_c_min / hbar;
}

inline double eight_pi_ratio(double epsilon, double planck_energy) {
    if (!(planck_energy > 0.0)) {
        throw std::invalid_argument("eight_pi_ratio: planck_energy must be > 0");
    }
    return 8.0 * std::numbers::pi * epsilon / planck_energy;
}

struct BoundResult {
    BoundInputs inputs;
    DispersionRule rule;
    PhysicalConstants constants;
    double delta;               // GeV
    double tau_c_min;           // s
    double epsilon_min;         // GeV
    double epsilon_over_planck;
    double eight_pi_over_planck;  // 8*pi*epsilon_min/planck_energy
};

inline BoundResult compute_bound(const BoundInputs& in, DispersionRule rule,
                                 const PhysicalConstants& constants = {}) {
    in.validate();
    const double delta = system_dispersion(in, rule);
    const double tc_min = tau_c_lower_bound(in);
    BoundResult out;
    out.inputs = in;
    out.rule = rule;
    out.constants = constants;
    out.delta = delta;
    out.tau_c_min = tc_min;
    out.epsilon_min = std::isinf(tc_min) ? std::numeric_limits<double>::infinity()
                                         : epsilon_lower_bound(delta, tc_min, constants.hbar);
    out.epsilon_over_planck = out.epsilon_min / constants.planck_energy;
    out.eight_pi_over_planck = eight_pi_ratio(out.epsilon_min, constants.planck_energy);
    return out;
}

// Prediction for a second system once epsilon is pinned (e.g. by saturating
// the bound from the first): gamma = gamma_c * tau / tau_c(epsilon, delta).
struct BranchingPrediction {
    BoundInputs inputs;         // gamma field ignored on input
    DispersionRule rule;
    double epsilon;             // GeV, assumed value of the universal scale
    double delta;               // GeV
    double tau_c;               // s
    double gamma_predicted;
    bool exceeds_unity;         // gamma > 1 means the linear estimate broke down
};

inline BranchingPrediction predict_violation(const BoundInputs& in, DispersionRule rule,
                                             double epsilon,
                                             const PhysicalConstants& constants = {}) {
    in.validate();
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("predict_violation: epsilon must be positive and finite");
    }
    const double delta = system_dispersion(in, rule);
    const double tau_c = constants.hbar * epsilon / (delta * delta);
    BranchingPrediction out;
    out.inputs = in;
    out.rule = rule;
    out.epsilon = epsilon;
    out.delta = delta;
    out.tau_c = tau_c;
    out.gamma_predicted = in.gamma_c * in.tau / tau_c;
    out.exceeds_unity = out.gamma_predicted > 1.0;
    return out;
}

namespace presets {

// Neutral-kaon CP violation: splitting ~200 MeV scale, superpositions
// observed over ~5e-8 s, violation at the 2e-3 level.
inline BoundInputs kaon() { return {"kaon", 0.2, 5e-8, 2e-3, 0.5}; }

// Neutral-B system: 5 GeV splitting scale, 1e-12 s lifetime; gamma is the
// quantity to predict, so the observed field is left at zero.
inline BoundInputs b_meson() { return {"b_meson", 5.0, 1e-12, 0.0, 0.5}; }

}  // namespace presets

// Full pipeline: saturate the kaon bound to fix epsilon, then predict the
// violation parameter for the B system under the same dispersion rule.
inline BranchingPrediction b_meson_prediction(DispersionRule rule,
                                              const PhysicalConstants& constants = {}) {
    const BoundResult kaon = compute_bound(presets::kaon(), rule, constants);
    return predict_violation(presets::b_meson(), rule, kaon.epsilon_min, constants);
}

}  // namespace ecsim
