#include "casimir/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::analysis {

ForceCurve average_curves(std::span<const ForceCurve> curves, std::optional<std::size_t> window) {
  if (curves.empty()) throw UsageError("average_curves: no input curves");
  const auto& first = curves.front();
  ForceCurve out;
  out.radius = first.radius;
  out.temperature = first.temperature;
  out.noise_floor = first.noise_floor;

  std::vector<ForcePoint> pool;
  for (const auto& c : curves) {
    if (c.radius != first.radius || c.temperature != first.temperature) {
      throw UsageError("average_curves: curves differ in radius or temperature");
    }
    if (c.jump_in) out.jump_in = std::max(out.jump_in.value_or(0.0), *c.jump_in);
    pool.insert(pool.end(), c.points.begin(), c.points.end());
  }
  if (pool.empty()) throw UsageError("average_curves: curves hold no points");
  std::stable_sort(pool.begin(), pool.end(), [](const ForcePoint& a, const ForcePoint& b) {
    return a.separation < b.separation;
  });

  const std::size_t w = window.value_or(5 * curves.size());
  if (w == 0) throw UsageError("average_curves: window must be >= 1");
  const std::size_t n = pool.size();
  const std::size_t before = (w - 1) / 2;
  const std::size_t after = w - 1 - before;

  // prefix sums keep this O(n) for large pools
  std::vector<double> sd(n + 1, 0.0), sf(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sd[i + 1] = sd[i] + pool[i].separation;
    sf[i + 1] = sf[i] + pool[i].force;
  }
  std::vector<ForcePoint> smoothed;
  smoothed.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo_off = before, hi_off = after;
    if (i < before || n - 1 - i < after) {
      const std::size_t r = std::min({before, i, n - 1 - i});
      lo_off = hi_off = r;
    }
    const std::size_t a = i - lo_off, b = i + hi_off + 1;
    const double cnt = static_cast<double>(b - a);
    smoothed.push_back({(sd[b] - sd[a]) / cnt, (sf[b] - sf[a]) / cnt});
  }

  // running means of sorted data stay sorted; merge exact ties
  for (std::size_t i = 0; i < smoothed.size();) {
    std::size_t j = i;
    double fsum = 0.0;
    while (j < smoothed.size() && smoothed[j].separation == smoothed[i].separation) {
      fsum += smoothed[j].force;
      ++j;
    }
    out.points.push_back({smoothed[i].separation, fsum / static_cast<double>(j - i)});
    i = j;
  }
  return out;
}

ErrorProfile rms_error_profile(const ForceCurve& experiment, const ForceModel& model, double lower,
                               std::span<const double> uppers) {
  if (uppers.empty()) throw UsageError("rms_error_profile: no upper bounds");
  for (std::size_t i = 0; i < uppers.size(); ++i) {
    if (uppers[i] < lower || (i > 0 && !(uppers[i] > uppers[i - 1]))) {
      throw UsageError("rms_error_profile: upper bounds must increase and be >= lower");
    }
  }
  std::vector<std::pair<double, double>> sq;  // (d, residual²)
  for (const auto& p : experiment.points) {
    if (p.separation >= lower && p.separation <= uppers.back()) {
      const double r = p.force - model(p.separation);
      sq.emplace_back(p.separation, r * r);
    }
  }
  std::sort(sq.begin(), sq.end());

  ErrorProfile prof;
  prof.lower = lower;
  const double ref = std::abs(model(lower));
  std::size_t k = 0;
  double acc = 0.0;
  for (double u : uppers) {
    while (k < sq.size() && sq[k].first <= u) acc += sq[k++].second;
    if (k == 0) {
      std::ostringstream msg;
      msg << "rms_error_profile: no points in [" << lower * 1e9 << ", " << u * 1e9 << "] nm";
      throw UsageError(msg.str());
    }
    const double sigma = std::sqrt(acc / static_cast<double>(k));
    prof.upper_bounds.push_back(u);
    prof.accumulated_rms.push_back(sigma);
    prof.relative_to_shortest.push_back(sigma / ref);
    prof.counts.push_back(k);
  }
  return prof;
}

std::vector<PointwiseError> pointwise_errors(const ForceCurve& experiment, const ForceModel& model,
                                             double lower, double upper) {
  std::vector<PointwiseError> out;
  for (const auto& p : experiment.points) {
    if (p.separation < lower || p.separation > upper) continue;
    const double f = model(p.separation);
    const double r = p.force - f;
    out.push_back({p.separation, r, std::abs(r) / std::abs(f)});
  }
  std::sort(out.begin(), out.end(), [](const PointwiseError& a, const PointwiseError& b) {
    return a.separation < b.separation;
  });
  return out;
}

// ---- tabulated model ----

struct TabulatedModel::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> s;
};

TabulatedModel::TabulatedModel(const ForceModel& model, double d_min, double d_max,
                               int points_per_decade) {
  if (!(d_min > 0.0) || !(d_max > d_min) || points_per_decade < 2) {
    throw UsageError("TabulatedModel: need 0 < d_min < d_max and >= 2 points per decade");
  }
  const double decades = std::log10(d_max / d_min);
  const auto n = static_cast<std::size_t>(std::ceil(decades * points_per_decade)) + 1;
  const double lo = std::log(d_min), hi = std::log(d_max);
  std::vector<double> ln_d(n), values(n);
  for (std::size_t i = 0; i < n; ++i) {
    ln_d[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = model(std::exp(ln_d[i]));
  }
  build(std::move(ln_d), std::move(values));
}

TabulatedModel::TabulatedModel(std::span<const double> separations, std::span<const double> values) {
  if (separations.size() != values.size() || separations.size() < 4) {
    throw UsageError("TabulatedModel: need at least 4 matched samples");
  }
  std::vector<double> ln_d;
  for (double d : separations) {
    if (!(d > 0.0)) throw DomainError("TabulatedModel: separations must be > 0");
    ln_d.push_back(std::log(d));
  }
  const double h = (ln_d.back() - ln_d.front()) / static_cast<double>(ln_d.size() - 1);
  for (std::size_t i = 1; i < ln_d.size(); ++i) {
    if (std::abs((ln_d[i] - ln_d[i - 1]) - h) > 1e-6 * std::abs(h) || !(h > 0.0)) {
      throw UsageError("TabulatedModel: separations must be log-uniform and increasing");
    }
  }
  build(std::move(ln_d), std::vector<double>(values.begin(), values.end()));
}

void TabulatedModel::build(std::vector<double> ln_d, std::vector<double> values) {
  d_min_ = std::exp(ln_d.front());
  d_max_ = std::exp(ln_d.back());
  const bool all_neg = std::all_of(values.begin(), values.end(), [](double v) { return v < 0.0; });
  const bool all_pos = std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; });
  logarithmic_ = all_neg || all_pos;
  sign_ = all_pos ? 1.0 : -1.0;
  if (logarithmic_) {
    for (double& v : values) v = std::log(std::abs(v));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("TabulatedModel: non-finite sample");
  }
  const double h = (ln_d.back() - ln_d.front()) / static_cast<double>(ln_d.size() - 1);
  spline_ = std::make_shared<const Spline>(
      Spline{boost::math::interpolators::cardinal_cubic_b_spline<double>(
          values.begin(), values.end(), ln_d.front(), h)});
}

double TabulatedModel::operator()(double d) const {
  // a little slack for round-off at the table ends
  if (!(d >= d_min_ * (1.0 - 1e-12) && d <= d_max_ * (1.0 + 1e-12))) {
    std::ostringstream msg;
    msg << "tabulated model evaluated at " << d * 1e9 << " nm, outside [" << d_min_ * 1e9 << ", "
        << d_max_ * 1e9 << "] nm";
    throw DomainError(msg.str());
  }
  const double v = spline_->s(std::log(d));
  return logarithmic_ ? sign_ * std::exp(v) : v;
}

ForceModel TabulatedModel::as_model() const {
  return [copy = *this](double d) { return copy(d); };
}

// ---- synthesis ----

NoiseKind parse_noise_kind(std::string_view text) {
  if (text == "gaussian") return NoiseKind::Gaussian;
  if (text == "uniform") return NoiseKind::Uniform;
  if (text == "rademacher") return NoiseKind::Rademacher;
  throw ConfigError("unknown noise kind '" + std::string(text) +
                    "' (expected gaussian, uniform or rademacher)");
}

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Gaussian: return "gaussian";
    case NoiseKind::Uniform: return "uniform";
    case NoiseKind::Rademacher: return "rademacher";
  }
  return "unknown";
}

double force_gradient(const ForceModel& model, double radius, double d) {
  if (!(d > 0.0)) throw DomainError("force_gradient: d must be > 0");
  const double h = 1e-3 * d;
  return 2.0 * constants::pi * radius * (model(d + h) - model(d - h)) / (2.0 * h);
}

double spring_constant_for_jump_in(const ForceModel& model, double radius, double d) {
  const double k = force_gradient(model, radius, d);
  if (!(k > 0.0)) throw DomainError("force gradient is not positive at the requested separation");
  return k;
}

ForceCurve synthesize_measurement(const ForceModel& model, const SynthesisOptions& o) {
  if (!(o.spring_constant > 0.0)) throw DomainError("spring constant must be > 0");
  if (!(o.d_start > o.d_end) || !(o.d_end > 0.0)) {
    throw UsageError("synthesis needs d_start > d_end > 0");
  }
  if (!(o.approach_rate > 0.0) || !(o.sample_rate > 0.0)) {
    throw UsageError("approach rate and sample rate must be > 0");
  }
  if (!(o.noise >= 0.0)) throw UsageError("noise must be >= 0");
  if (!(o.radius > 0.0)) throw UsageError("radius must be > 0");

  boost::random::mt19937_64 rng(o.seed);
  boost::random::uniform_01<double> unit;
  boost::random::normal_distribution<double> normal(0.0, 1.0);

  const double step = o.approach_rate / o.sample_rate;
  const double phase = o.random_phase ? unit(rng) * step : 0.0;

  ForceCurve curve;
  curve.radius = o.radius;
  curve.temperature = o.temperature;
  curve.noise_floor = o.noise;

  const bool finite_spring = std::isfinite(o.spring_constant);
  for (std::size_t i = 0;; ++i) {
    const double d = o.d_start - phase - static_cast<double>(i) * step;
    if (d < o.d_end) break;
    if (finite_spring && force_gradient(model, o.radius, d) >= o.spring_constant) {
      curve.jump_in = d;
      break;
    }
    double eta = 0.0;
    switch (o.noise_kind) {
      case NoiseKind::Gaussian: eta = normal(rng); break;
      case NoiseKind::Uniform: eta = std::sqrt(3.0) * (2.0 * unit(rng) - 1.0); break;
      case NoiseKind::Rademacher: eta = unit(rng) < 0.5 ? -1.0 : 1.0; break;
    }
    curve.points.push_back({d, model(d) + o.noise * eta});
  }
  std::reverse(curve.points.begin(), curve.points.end());
  return curve;
}

// ---- discrimination study ----

DiscriminationReport model_discrimination_study(const ForceModel& corrected,
                                                const ForceModel& uncorrected,
                                                const DiscriminationOptions& options) {
  if (options.curves == 0) throw UsageError("study needs at least one synthetic curve");
  std::vector<ForceCurve> runs;
  for (std::size_t i = 0; i < options.curves; ++i) {
    SynthesisOptions s = options.synthesis;
    s.seed = options.synthesis.seed + i;
    runs.push_back(synthesize_measurement(corrected, s));
  }
  const ForceCurve data = average_curves(runs);

  FitOptions fo = options.fit;
  fo.fit_alpha = options.fit_alpha;

  DiscriminationReport rep;
  rep.true_model = fit_curve(data, corrected, options.fit_lo, options.fit_hi, fo);
  rep.wrong_model = fit_curve(data, uncorrected, options.fit_lo, options.fit_hi, fo);
  rep.points = rep.wrong_model.points;
  const int k = fo.electrostatic_exponent;
  rep.wrong_unshifted = evaluate_fit(data, uncorrected, options.fit_lo, options.fit_hi, 0.0, 0.0, k);
  const double best = rep.wrong_model.delta;
  const double a = rep.wrong_model.alpha;
  rep.probe_minus = evaluate_fit(data, uncorrected, options.fit_lo, options.fit_hi,
                                 best - options.probe_shift, a, k);
  rep.probe_plus = evaluate_fit(data, uncorrected, options.fit_lo, options.fit_hi,
                                best + options.probe_shift, a, k);
  if (options.extended_hi > options.fit_hi) {
    rep.wrong_extended_rms_relative =
        evaluate_fit(data, uncorrected, options.fit_lo, options.extended_hi, best, a, k).rms_relative;
  }
  return rep;
}

}  // namespace casimir::analysis
