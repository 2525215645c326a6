#pragma once

// Unit conventions used throughout: energies in GeV, times in seconds.

namespace ecsim {

inline constexpr double hbar_gev_s = 6.582119e-25;

// Standard Planck energy; the rounded 1e19 convention is selectable where
// a PhysicalConstants block is accepted.
inline constexpr double planck_energy_gev = 1.22e19;
inline constexpr double planck_energy_rounded_gev = 1e19;

constexpr double mev_to_gev(double mev) { return mev * 1e-3; }
constexpr double gev_to_mev(double gev) { return gev * 1e3; }
constexpr double ev_to_gev(double ev) { return ev * 1e-9; }
constexpr double gev_to_ev(double gev) { return gev * 1e9; }

}  // namespace ecsim
