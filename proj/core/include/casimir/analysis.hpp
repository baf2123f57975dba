#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "casimir/fit.hpp"
#include "casimir/force_curve.hpp"

namespace casimir::analysis {

/// Pools every point, sorts by separation and applies a centred running mean of
/// `window` points to both coordinates (default: 5 per input curve). Windows
/// shrink symmetrically at the ends. Coincident separations are merged.
ForceCurve average_curves(std::span<const ForceCurve> curves,
                          std::optional<std::size_t> window = std::nullopt);

struct ErrorProfile {
  double lower = 0.0;
  std::vector<double> upper_bounds;
  std::vector<double> accumulated_rms;       // N/m
  std::vector<double> relative_to_shortest;  // σ / |F_calc(lower)|
  std::vector<std::size_t> counts;
};

/// σ(u) = √(Σ_{d∈[lower,u]} (F_exp - F_calc)² / N) for each upper bound u.
ErrorProfile rms_error_profile(const ForceCurve& experiment, const ForceModel& model, double lower,
                               std::span<const double> uppers);

struct PointwiseError {
  double separation;
  double residual;  // F_exp - F_calc
  double relative;  // |residual| / |F_calc|
};

std::vector<PointwiseError> pointwise_errors(const ForceCurve& experiment, const ForceModel& model,
                                             double lower, double upper);

/// A force model sampled once on a log-spaced grid and interpolated with a cubic
/// B-spline in (ln D, ln|F|). Cheap to call; used in place of direct Lifshitz sums.
class TabulatedModel {
 public:
  TabulatedModel(const ForceModel& model, double d_min, double d_max, int points_per_decade = 40);
  /// Samples must be strictly increasing and log-uniform in separation.
  TabulatedModel(std::span<const double> separations, std::span<const double> values);

  double operator()(double d) const;
  double d_min() const { return d_min_; }
  double d_max() const { return d_max_; }
  ForceModel as_model() const;

 private:
  void build(std::vector<double> ln_d, std::vector<double> values);
  struct Spline;
  std::shared_ptr<const Spline> spline_;
  double d_min_ = 0.0;
  double d_max_ = 0.0;
  double sign_ = -1.0;
  bool logarithmic_ = true;
};

enum class NoiseKind { Gaussian, Uniform, Rademacher };

NoiseKind parse_noise_kind(std::string_view text);
std::string_view to_string(NoiseKind kind);

struct SynthesisOptions {
  double d_start = 300e-9;          // approach starts here, m
  double d_end = 5e-9;              // and would end here without a jump, m
  double approach_rate = 1e-9;      // m/s
  double sample_rate = 5.0;         // Hz
  double noise = 1e-7;              // σ of the additive noise, N/m
  NoiseKind noise_kind = NoiseKind::Gaussian;
  double spring_constant = std::numeric_limits<double>::infinity();  // N/m
  double radius = 10e-3;            // m
  double temperature = 298.0;       // K
  bool random_phase = true;         // offset the sampling grid by a random fraction of a step
  std::uint64_t seed = 1;
};

/// Raw-force gradient 2πR · d(F/2πR)/dD by central differences.
double force_gradient(const ForceModel& model, double radius, double d);

/// Spring constant whose jump-in lands at `d` (the force gradient there).
double spring_constant_for_jump_in(const ForceModel& model, double radius, double d);

/// Samples the model along an approach from d_start to d_end, stops at the first
/// sampled D where the gradient reaches the spring constant (tagged as jump_in,
/// not included), and adds seeded noise. Points are returned in increasing D.
ForceCurve synthesize_measurement(const ForceModel& model, const SynthesisOptions& options);

struct DiscriminationOptions {
  double fit_lo = 20e-9;
  double fit_hi = 100e-9;
  double extended_hi = 300e-9;   // second rms bound, as in the long-range summation
  double probe_shift = 0.5e-9;   // offsets around the best shift
  std::size_t curves = 5;
  bool fit_alpha = false;
  SynthesisOptions synthesis;
  FitOptions fit;
};

struct DiscriminationReport {
  FitResult true_model;           // corrected data vs corrected model
  FitResult wrong_model;          // corrected data vs uncorrected model
  FitResult wrong_unshifted;      // uncorrected model at δ = 0
  FitResult probe_minus;          // best shift - probe
  FitResult probe_plus;           // best shift + probe
  double wrong_extended_rms_relative = 0.0;  // wrong model at its best shift up to extended_hi
  std::size_t points = 0;
};

/// Generates averaged noisy data from `corrected`, then fits it with both the
/// corrected and the uncorrected model allowing a separation shift.
DiscriminationReport model_discrimination_study(const ForceModel& corrected,
                                                const ForceModel& uncorrected,
                                                const DiscriminationOptions& options);

}  // namespace casimir::analysis
