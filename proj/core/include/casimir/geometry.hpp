#pragma once

#include <variant>

#include "casimir/force_curve.hpp"
#include "casimir/lifshitz.hpp"

// Ideal-conductor Casimir formulas, proximity-force geometry, and the
// second-order roughness correction.
namespace casimir::geometry {

struct ParallelPlates {};
struct SphereFlat {
  double radius = 0.0;
};
struct CrossedCylinders {
  double radius1 = 0.0;
  double radius2 = 0.0;
};

using Geometry = std::variant<ParallelPlates, SphereFlat, CrossedCylinders>;

/// Corrugation amplitude: half the maximum peak-to-trough roughness.
struct RoughnessSpec {
  double amplitude = 0.0;  // m
};

/// Ideal plate pressure -π²ħc/(240 d⁴), Pa.
double casimir_pressure_plates(double d);

/// Ideal plate free energy per area -π²ħc/(720 d³), J/m².
double casimir_energy_plates(double d);

/// Sphere-flat / crossed-cylinder force -π³Rħc/(360 D³), N.
double casimir_force_curved(double D, const Geometry& geom);

/// R for a sphere, √(R₁R₂) for crossed cylinders.
double effective_radius(const Geometry& geom);

/// 1 + 6 (A_r/D)². Throws ValidityError when A_r/D >= 0.5.
double roughness_factor(double D, const RoughnessSpec& rough);

/// t = k_B T D / (ħc).
double temperature_parameter(double T, double D);

/// Pointwise multiplication by roughness_factor(D).
ForceCurve apply_corrections(const ForceCurve& curve, const RoughnessSpec& rough);
lifshitz::EnergyCurve apply_corrections(const lifshitz::EnergyCurve& curve,
                                        const RoughnessSpec& rough);

}  // namespace casimir::geometry
