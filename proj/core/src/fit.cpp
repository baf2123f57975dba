#include "casimir/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace casimir::analysis {

double electrostatic_term(double d, double alpha, int exponent) {
  if (!(d > 0.0)) throw DomainError("electrostatic_term: d must be > 0");
  if (exponent == 1) return alpha / d;
  if (exponent == 2) return alpha / (d * d);
  throw ConfigError("electrostatic exponent must be 1 or 2");
}

FitProblem::FitProblem(const ForceCurve& experiment, const ForceModel& model, double lo, double hi,
                       int electrostatic_exponent)
    : experiment_(experiment) {
  if (!(lo > 0.0) || !(hi > lo)) throw UsageError("fit range must satisfy 0 < lo < hi");
  if (electrostatic_exponent != 1 && electrostatic_exponent != 2) {
    throw ConfigError("electrostatic exponent must be 1 or 2");
  }
  auto& pts = experiment_.points;
  std::stable_sort(pts.begin(), pts.end(),
                   [](const ForcePoint& a, const ForcePoint& b) { return a.separation < b.separation; });
  if (pts.size() < 2) throw UsageError("fit needs at least two experimental points");
  coverage_lo_ = pts.front().separation;
  coverage_hi_ = pts.back().separation;

  for (const auto& p : pts) {
    if (p.separation >= lo && p.separation <= hi) {
      if (!grid_.empty() && grid_.back() == p.separation) continue;
      grid_.push_back(p.separation);
    }
  }
  if (grid_.size() < 3) {
    std::ostringstream msg;
    msg << "fit range [" << lo * 1e9 << ", " << hi * 1e9 << "] nm holds fewer than 3 data points";
    throw UsageError(msg.str());
  }
  model_.reserve(grid_.size());
  inverse_power_.reserve(grid_.size());
  for (double d : grid_) {
    const double f = model(d);
    if (!std::isfinite(f)) throw DomainError("model is not finite inside the fit range");
    model_.push_back(f);
    inverse_power_.push_back(electrostatic_term(d, 1.0, electrostatic_exponent));
  }
}

double FitProblem::objective(double delta, double alpha) const {
  const auto& pts = experiment_.points;
  double sum = 0.0;
  // grid is sorted, so the bracketing index only ever moves forward
  std::size_t j = 1;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double x = grid_[i] + delta;
    double fe;
    if (x <= coverage_lo_) {
      fe = pts.front().force;
    } else if (x >= coverage_hi_) {
      fe = pts.back().force;
    } else {
      while (j < pts.size() - 1 && pts[j].separation < x) ++j;
      const auto& a = pts[j - 1];
      const auto& b = pts[j];
      const double span = b.separation - a.separation;
      fe = span > 0.0 ? a.force + (x - a.separation) / span * (b.force - a.force) : b.force;
    }
    const double r = fe - model_[i] - alpha * inverse_power_[i];
    sum += r * r;
  }
  return sum;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (hi < lo) std::swap(lo, hi);
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  // endpoints can win when the minimum sits on the bracket edge
  double best = 0.5 * (a + b);
  double fbest = f(best);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx < fbest) {
      fbest = fx;
      best = x;
    }
  }
  return best;
}

SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f, double x0, double y0,
                             double step_x, double step_y, double x_lo, double x_hi, double y_lo,
                             double y_hi, double tol, int max_iterations) {
  struct V {
    double x, y, f;
  };
  auto clampv = [&](double x, double y) {
    x = std::clamp(x, x_lo, x_hi);
    y = std::clamp(y, y_lo, y_hi);
    return V{x, y, f(x, y)};
  };
  // work in coordinates scaled by the steps so one tolerance covers both axes
  std::array<V, 3> s{clampv(x0, y0), clampv(x0 + step_x, y0), clampv(x0, y0 + step_y)};
  SimplexResult out;
  for (int it = 0; it < max_iterations; ++it) {
    std::sort(s.begin(), s.end(), [](const V& a, const V& b) { return a.f < b.f; });
    out.iterations = it;
    double size = 0.0;
    for (int k = 1; k < 3; ++k) {
      size = std::max(size, std::hypot((s[k].x - s[0].x) / step_x, (s[k].y - s[0].y) / step_y));
    }
    if (size < tol) {
      out.converged = true;
      break;
    }
    const double cx = 0.5 * (s[0].x + s[1].x);
    const double cy = 0.5 * (s[0].y + s[1].y);
    const V r = clampv(2.0 * cx - s[2].x, 2.0 * cy - s[2].y);
    if (r.f < s[0].f) {
      const V e = clampv(3.0 * cx - 2.0 * s[2].x, 3.0 * cy - 2.0 * s[2].y);
      s[2] = e.f < r.f ? e : r;
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      const bool outside = r.f < s[2].f;
      const V c = outside ? clampv(cx + 0.5 * (r.x - cx), cy + 0.5 * (r.y - cy))
                          : clampv(cx + 0.5 * (s[2].x - cx), cy + 0.5 * (s[2].y - cy));
      if (c.f < std::min(r.f, s[2].f)) {
        s[2] = c;
      } else {
        for (int k = 1; k < 3; ++k) {
          s[k] = clampv(s[0].x + 0.5 * (s[k].x - s[0].x), s[0].y + 0.5 * (s[k].y - s[0].y));
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const V& a, const V& b) { return a.f < b.f; });
  out.x = s[0].x;
  out.y = s[0].y;
  out.value = s[0].f;
  return out;
}

namespace {

FitResult finish(const FitProblem& problem, double delta, double alpha, double lo, double hi) {
  FitResult r;
  r.delta = delta;
  r.alpha = alpha;
  r.objective = problem.objective(delta, alpha);
  r.points = problem.grid().size();
  r.rms = std::sqrt(r.objective / static_cast<double>(r.points));
  const double ref = std::abs(problem.model_values().front());
  r.rms_relative = ref > 0.0 ? r.rms / ref : std::numeric_limits<double>::infinity();
  r.range_lo = lo;
  r.range_hi = hi;
  return r;
}

}  // namespace

FitResult evaluate_fit(const ForceCurve& experiment, const ForceModel& model, double lo, double hi,
                       double delta, double alpha, int electrostatic_exponent) {
  const FitProblem problem(experiment, model, lo, hi, electrostatic_exponent);
  return finish(problem, delta, alpha, lo, hi);
}

FitResult fit_curve(const ForceCurve& experiment, const ForceModel& model, double lo, double hi,
                    const FitOptions& options) {
  const FitProblem problem(experiment, model, lo, hi, options.electrostatic_exponent);

  const double d_lo = std::max(options.delta_lo, problem.admissible_delta_lo());
  const double d_hi = std::min(options.delta_hi, problem.admissible_delta_hi());
  if (!(d_hi > d_lo)) {
    throw UsageError("data do not cover the fit range over any admissible shift");
  }
  const double a_lo = options.fit_alpha ? options.alpha_lo : 0.0;
  const double a_hi = options.fit_alpha ? options.alpha_hi : 0.0;
  const double span_d = options.delta_hi - options.delta_lo;
  const double span_a = options.alpha_hi - options.alpha_lo;
  if (!(span_d > 0.0) || (options.fit_alpha && !(span_a > 0.0))) {
    throw ConfigError("fit search spans must be non-empty");
  }

  int evals = 0;
  auto obj = [&](double d, double a) {
    ++evals;
    return problem.objective(d, a);
  };

  double delta = std::clamp(0.0, d_lo, d_hi);
  double alpha = 0.0;
  const double line_tol = 1e-2 * options.move_tol;
  bool settled = false;
  for (int sweep = 0; sweep < options.sweeps; ++sweep) {
    const double d_new =
        golden_section_minimize([&](double d) { return obj(d, alpha); }, d_lo, d_hi, line_tol * span_d);
    double a_new = alpha;
    if (options.fit_alpha) {
      a_new = golden_section_minimize([&](double a) { return obj(d_new, a); }, a_lo, a_hi,
                                      line_tol * span_a);
    }
    const bool small_d = std::abs(d_new - delta) < options.move_tol * span_d;
    const bool small_a = !options.fit_alpha || std::abs(a_new - alpha) < options.move_tol * span_a;
    delta = d_new;
    alpha = a_new;
    if (sweep > 0 && small_d && small_a) {
      settled = true;
      break;
    }
  }

  bool simplex = false;
  if (!settled && options.fit_alpha) {
    simplex = true;
    const auto s = nelder_mead_2d(obj, delta, alpha, 0.05 * span_d, 0.05 * span_a, d_lo, d_hi, a_lo,
                                  a_hi, line_tol, options.simplex_max_iterations);
    if (s.value <= obj(delta, alpha)) {
      delta = s.x;
      alpha = s.y;
    }
    if (!s.converged) {
      FitResult best = finish(problem, delta, alpha, lo, hi);
      best.used_simplex = true;
      best.evaluations = evals;
      throw FitError("fit did not converge within the simplex iteration budget", best);
    }
  }

  FitResult r = finish(problem, delta, alpha, lo, hi);
  r.used_simplex = simplex;
  r.evaluations = evals;
  return r;
}

}  // namespace casimir::analysis
