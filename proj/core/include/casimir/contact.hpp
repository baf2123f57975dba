#pragma once

#include <string_view>

// JKR/DMT adhesive contact of two elastic bodies (sign convention: F > 0 compresses).
namespace casimir::contact {

struct Material {
  double youngs_modulus = 0.0;  // Pa
  double poisson_ratio = 0.0;
};

struct ContactSystem {
  Material first;
  Material second;
  double radius = 0.0;                 // effective radius, m
  double interfacial_energy = 0.0;     // γ, J/m²
  double equilibrium_separation = 3e-10;  // D_e, m

  /// K = [(1-ν₁²)/E₁ + (1-ν₂²)/E₂]⁻¹. Validates the system.
  double combined_modulus() const;
};

enum class AdhesionModel { DMT, Transition, JKR };

std::string_view to_string(AdhesionModel model);

/// μ = (R γ² / (K² D_e³))^(1/3).
double tabor_parameter(const ContactSystem& sys);

/// DMT below 0.1, JKR above 5, transition between.
AdhesionModel select_model(double mu);

/// 6πγR F + (3πγR)², written as 6πγR (F - F_pulloff) so it vanishes exactly at pull-off.
double jkr_discriminant(const ContactSystem& sys, double load);

/// a = [(R/K)(F + 3πγR + √(6πγRF + (3πγR)²))]^(1/3). Throws NoContactError below pull-off.
double jkr_contact_radius(const ContactSystem& sys, double load);

/// δ = a²/R - √(2πγa/K).
double jkr_central_displacement(const ContactSystem& sys, double load);

/// F_a = -(3/2) π γ R.
double pull_off_force(const ContactSystem& sys);

/// Inverse of pull_off_force for a measured F_a.
double interfacial_energy_from_pull_off(double pull_off, double radius);

struct ContactReport {
  double combined_modulus;
  double tabor;
  AdhesionModel model;
  double contact_radius_zero_load;
  double displacement_zero_load;
  double pull_off;
};

ContactReport analyze(const ContactSystem& sys);

}  // namespace casimir::contact
