#pragma once

#include <functional>
#include <span>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/force_curve.hpp"

namespace casimir::analysis {

/// Residual electrostatic contribution α/d (exponent 1) or α/d² (exponent 2),
/// in the same normalized-force units as the curve. With F/2πR in N/m, α is in
/// N for exponent 1 and N·m for exponent 2.
double electrostatic_term(double d, double alpha, int exponent = 1);

struct FitOptions {
  double delta_lo = -5e-9;   // m
  double delta_hi = 30e-9;   // m
  double alpha_lo = -1e-13;
  double alpha_hi = 1e-13;
  int electrostatic_exponent = 1;
  bool fit_alpha = true;     // false pins α = 0 and fits δ alone
  int sweeps = 3;            // coordinate-descent sweeps before the simplex fallback
  double move_tol = 1e-3;    // convergence: moves below this fraction of each span
  int simplex_max_iterations = 4000;
};

struct FitResult {
  double delta = 0.0;         // m
  double alpha = 0.0;
  double objective = 0.0;     // Σ residual²
  double rms = 0.0;           // √(objective / N), N/m
  double rms_relative = 0.0;  // rms / |F_calc| at the shortest separation in range
  double range_lo = 0.0;
  double range_hi = 0.0;
  std::size_t points = 0;
  bool used_simplex = false;
  int evaluations = 0;
};

/// Raised when the minimizer exhausts its budget; carries the best point found.
class FitError : public Error {
 public:
  FitError(const std::string& what, FitResult best) : Error(what), best_(best) {}
  const FitResult& best() const { return best_; }

 private:
  FitResult best_;
};

/// Least-squares objective Σ_d [F_exp(d + δ) - F_calc(d) - α/d^k]² over a
/// fixed set of separations d, with the model pre-evaluated once.
class FitProblem {
 public:
  /// The evaluation grid is the experimental separations inside [lo, hi].
  FitProblem(const ForceCurve& experiment, const ForceModel& model, double lo, double hi,
             int electrostatic_exponent = 1);

  double objective(double delta, double alpha) const;
  std::span<const double> grid() const { return grid_; }
  std::span<const double> model_values() const { return model_; }

  /// Shift range for which every d + δ stays inside the experimental coverage.
  double admissible_delta_lo() const { return coverage_lo_ - grid_.front(); }
  double admissible_delta_hi() const { return coverage_hi_ - grid_.back(); }

 private:
  ForceCurve experiment_;  // sorted copy
  std::vector<double> grid_;
  std::vector<double> model_;
  std::vector<double> inverse_power_;
  double coverage_lo_ = 0.0;
  double coverage_hi_ = 0.0;
};

/// Minimizes the objective over (δ, α): coordinate descent of golden-section
/// line searches, then a Nelder-Mead simplex if the sweeps have not settled.
FitResult fit_curve(const ForceCurve& experiment, const ForceModel& model, double lo, double hi,
                    const FitOptions& options = {});

/// Objective evaluated at fixed (δ, α) with the same bookkeeping as fit_curve.
FitResult evaluate_fit(const ForceCurve& experiment, const ForceModel& model, double lo, double hi,
                       double delta, double alpha, int electrostatic_exponent = 1);

/// Golden-section search for a minimum of a unimodal `f` on [lo, hi].
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

struct SimplexResult {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead on a box; points outside the box are clamped to it.
SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f, double x0, double y0,
                             double step_x, double step_y, double x_lo, double x_hi, double y_lo,
                             double y_hi, double tol, int max_iterations);

}  // namespace casimir::analysis
