#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "casimir/optical_data.hpp"

// Permittivities evaluated along the imaginary frequency axis, ε(iξ).
// All frequencies are angular frequencies in rad/s.
namespace casimir::dielectric {

struct DrudeParams {
  double omega_p = 0.0;  // plasma frequency
  double gamma = 0.0;    // relaxation rate
};

/// Cached ε(iξ) samples on a strictly increasing ξ grid.
class ImagAxisGrid {
 public:
  ImagAxisGrid(std::vector<double> xi, std::vector<double> eps);

  std::span<const double> xi() const { return xi_; }
  std::span<const double> eps() const { return eps_; }
  double xi_min() const { return xi_.front(); }
  double xi_max() const { return xi_.back(); }

  /// Log-log interpolation; `xi` must lie inside [xi_min, xi_max].
  double interpolate(double xi) const;

 private:
  std::vector<double> xi_;
  std::vector<double> eps_;
};

// ---- model variants --------------------------------------------------------

struct Vacuum {};

/// Frequency-independent permittivity. Mostly a perfect-conductor surrogate (ε ~ 1e8).
struct Constant {
  double value = 1.0;
};

struct Drude {
  double omega_p = 0.0;
  double gamma = 0.0;
};

struct Plasma {
  double omega_p = 0.0;
};

/// Single UV oscillator 1 + (n²-1)/(1 + (ξ/ω_UV)^q), optionally switching to
/// the plasma form above `plasma_crossover`.
struct SingleOscillator {
  double n_ref = 1.0;
  double omega_uv = 0.0;
  int exponent = 1;
  std::optional<double> plasma_omega_p;
  double plasma_crossover = 0.0;  // +inf when the plasma tail never applies
};

struct OscillatorTerm {
  double strength = 0.0;  // f_j, (rad/s)^2
  double omega = 0.0;     // ω_j, rad/s
  double damping = 0.0;   // g_j, rad/s
};

/// Debye relaxation plus damped IR/UV oscillators.
struct WaterOscillators {
  double debye_strength = 0.0;  // f, dimensionless
  double debye_time = 0.0;      // g, s
  std::vector<OscillatorTerm> terms;
};

/// Kramers-Kronig transformed table with closed-form tails outside the grid.
struct TabulatedKK {
  std::shared_ptr<const ImagAxisGrid> grid;
  DrudeParams low_tail;
  double high_tail_omega_p = 0.0;
};

using DielectricModel =
    std::variant<Vacuum, Constant, Drude, Plasma, SingleOscillator, WaterOscillators, TabulatedKK>;

/// ε(iξ) for ξ >= 0. At ξ = 0 this is the static limit and may be +inf (conductors).
double evaluate(const DielectricModel& model, double xi);

/// lim_{ξ→0} ε(iξ); +inf for Drude and plasma conductors.
double static_permittivity(const DielectricModel& model);

/// lim_{ξ→0} ξ²(ε(iξ) - 1). Non-zero only for plasma-like conductors, where it
/// keeps the transverse-electric zero-frequency reflection alive.
double static_xi2_susceptibility(const DielectricModel& model);

std::string describe(const DielectricModel& model);

// ---- closed forms ----------------------------------------------------------

/// ε'' = 2nk.
double eps_imag_from_nk(double n, double k);

double drude_eps(double xi, double omega_p, double gamma);
double plasma_eps(double xi, double omega_p);
double oscillator_eps(double xi, double n_ref, double omega_uv, int exponent = 1);
double water_eps(double xi, const WaterOscillators& params);

/// Drude loss function ε''(ω) = ω_p²γ / (ω(ω² + γ²)).
double drude_loss(double omega, double omega_p, double gamma);

/// ω_p from an electron number density (m^-3): ω_p² = N e² / (ε₀ m_e).
double plasma_frequency_from_density(double electrons_per_m3);

SingleOscillator make_oscillator(double n_ref, double omega_uv, int exponent,
                                 std::optional<double> plasma_omega_p = std::nullopt);

// ---- Kramers-Kronig --------------------------------------------------------

struct KkOptions {
  double omega_lo = 1e12;
  double omega_hi = 1e21;
  int points_per_decade = 200;
  double rel_tol = 1e-3;  // allowed change between step h and h/2
  /// Closed-form Drude loss contribution over [0, omega_lo]. Without it the
  /// integral is truncated at omega_lo.
  std::optional<DrudeParams> low_tail;
};

/// ε(iξ) = 1 + (2/π) ∫ x ε''(x) / (x² + ξ²) dx by trapezoid quadrature in ln x.
double kk_transform(const std::function<double(double)>& eps_imag, double xi,
                    const KkOptions& options = {});

/// (2/π) ∫_0^cutoff x ε''_Drude(x)/(x²+ξ²) dx in closed form.
double drude_kk_below(double cutoff, double xi, const DrudeParams& drude);

// ---- tabulated models ------------------------------------------------------

struct GridOptions {
  double xi_min = 1e14;
  double xi_max = 1e19;
  int points_per_decade = 20;
  KkOptions kk;
};

/// ε'' from the table, linear in ln ω inside the table, Drude loss below it,
/// zero above it.
double tabulated_eps_imag(const OpticalDataTable& table, const DrudeParams& drude, double omega);

/// KK-transforms the table (Drude-extended below, zero above) onto an ImagAxisGrid.
/// The grid is non-increasing by construction. Throws DataQualityError when the
/// table has a gap of more than one decade.
TabulatedKK build_tabulated_model(const OpticalDataTable& table, const DrudeParams& drude,
                                  const GridOptions& options = {});

}  // namespace casimir::dielectric
