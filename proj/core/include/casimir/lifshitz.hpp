#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/force_curve.hpp"

// Free energy per unit area between two identical coated half-spaces facing
// each other across a gap (metal | coatings | gap d | coatings | metal), as a
// Matsubara sum over imaginary frequencies of a transverse-wavevector integral.
namespace casimir::lifshitz {

using dielectric::DielectricModel;

struct Layer {
  DielectricModel model;
  double thickness = 0.0;  // m
};

/// Symmetric stack. Separations are measured between the outermost coating
/// surfaces, so d = 0 is coating-coating contact.
struct LayerStack {
  DielectricModel metal;
  std::vector<Layer> coatings;  // ordered from the metal outward
  DielectricModel gap = dielectric::Vacuum{};

  static LayerStack single_coating(DielectricModel metal, DielectricModel coating,
                                   double thickness, DielectricModel gap = dielectric::Vacuum{});
  std::string describe() const;
};

struct MatsubaraContext {
  double temperature = 298.0;    // K
  double rel_tol = 1e-4;         // doubling the term count must change F by less than this
  std::size_t max_terms = std::size_t{1} << 20;

  /// ξ_n = 2πn k_B T / ħ.
  double frequency(std::size_t n) const;
};

struct QuadratureOptions {
  double p_max = 1e4;     // upper limit of the p integral
  double rel_tol = 1e-5;
  unsigned max_depth = 18;
};

/// (Δ̄_ij, Δ_ij): TM and TE reflection coefficients seen from medium i onto j.
struct Reflection {
  double tm = 0.0;
  double te = 0.0;
};

/// Interface coefficients with s_k = sqrt(p² - 1 + ε_k):
///   Δ̄_ij = (s_j ε_i - s_i ε_j) / (s_j ε_i + s_i ε_j),  Δ_ij = (s_j - s_i) / (s_j + s_i).
/// For ε_i = 1 this is s_i = p.
Reflection fresnel_deltas(double eps_i, double eps_j, double p);

/// Effective gap-side reflection of the coated half-space at (ξ, p), composing
/// each coating with the factor exp(-2 ξ a s_k / c).
Reflection composite_delta_31(const LayerStack& stack, double xi, double p);

/// I(ξ, d) = (2ξd/c)² ∫_1^{p_max} p [ln(1 - Δ̄²e^{-2ξ s₃ d/c}) + ln(1 - Δ²e^{-2ξ s₃ d/c})] dp.
/// Non-positive for attracting stacks. ξ must be > 0.
double integrand_I(const LayerStack& stack, double xi, double d,
                   const QuadratureOptions& options = {});

/// lim_{ξ→0⁺} I(ξ, d) over the unbounded p range, from static permittivities.
double zero_frequency_I(const LayerStack& stack, double d, const QuadratureOptions& options = {});

struct FreeEnergy {
  double energy_per_area = 0.0;  // J/m²
  std::size_t terms = 0;         // Matsubara terms summed
};

/// F(d, T) = k_B T / (8π d²) Σ'_n I(ξ_n, d), term count doubled until converged.
/// Throws AccuracyError when the budget `ctx.max_terms` is exhausted.
FreeEnergy free_energy_per_area(const LayerStack& stack, double d, const MatsubaraContext& ctx,
                                const QuadratureOptions& options = {});

struct EnergyCurve {
  std::vector<double> separations;      // m
  std::vector<double> energy_per_area;  // J/m²
  std::vector<std::size_t> terms;
  double temperature = 0.0;
  std::string stack_description;
};

/// Evaluates separations in parallel (`threads` = 0 picks hardware concurrency).
/// Each separation is an independent sequential sum, so results do not depend
/// on the thread count.
EnergyCurve energy_curve(const LayerStack& stack, std::span<const double> separations,
                         const MatsubaraContext& ctx, unsigned threads = 0,
                         const QuadratureOptions& options = {});

/// Proximity-force conversion: F/2πR at D equals the plate free energy per area at D.
ForceCurve normalized_force_curve(const LayerStack& stack, std::span<const double> separations,
                                  double effective_radius, const MatsubaraContext& ctx,
                                  unsigned threads = 0);

}  // namespace casimir::lifshitz
