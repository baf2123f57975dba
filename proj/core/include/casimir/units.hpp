#pragma once

#include <string>
#include <string_view>

namespace casimir::units {

// Internal quantities are SI throughout (m, s, rad/s, K, Pa, N, J).
// eV / nm / µm only appear at ingestion and output boundaries.

enum class Dimension {
  Length,
  AngularFrequency,
  Temperature,
  Pressure,
  Force,
  NormalizedForce,  // N/m, i.e. F/2πR or energy per area
  SurfaceEnergy,    // J/m^2
  SpringConstant,   // N/m
  Velocity,
  Frequency,        // Hz
  NumberDensity,    // 1/m^3
  FrequencySquared, // (rad/s)^2, oscillator strengths
  Time,             // s, Debye relaxation time
  Dimensionless,
};

double ev_to_rad_per_s(double ev);
double rad_per_s_to_ev(double omega);
double nm_to_rad_per_s(double wavelength_nm);

/// Photon wavelength (nm) for a given photon energy (eV): λ = 2πħc/E.
double ev_to_plasma_wavelength(double energy_ev);

/// Converts an angular frequency given with a unit tag ∈ {rad_s, eV, nm}.
double frequency_from_tag(double value, std::string_view tag);

/// Parses "<number> <unit>" or "<number><unit>" into SI for the expected dimension.
/// Throws ConfigError mentioning `key` on a missing or mismatched unit.
double parse_quantity(std::string_view text, Dimension expected, std::string_view key);

}  // namespace casimir::units
