#pragma once

#include <numbers>

// Shared physical constants. Every module reads from here so that
// cross-module identities (proximity-force consistency, ideal limits)
// agree to the last bit.
namespace casimir::constants {

inline constexpr const char* kVersion = "CODATA-2018";

inline constexpr double pi = std::numbers::pi;

inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double electron_mass = 9.1093837015e-31;  // kg

inline constexpr double hbar_c = hbar * speed_of_light;    // J m

/// Angular frequency (rad/s) per electron-volt of photon energy.
inline constexpr double rad_per_s_per_ev = elementary_charge / hbar;

}  // namespace casimir::constants
