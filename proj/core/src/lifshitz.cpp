#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::lifshitz {

namespace c = casimir::constants;
using dielectric::evaluate;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(-y) underflows relative to the integrand's scale well before this.
constexpr double kTailWidth = 160.0;
constexpr double kUnderflowExponent = 745.0;

/// ε together with a quantity proportional to the normal wavevector in that medium.
struct Medium {
  double eps;
  double q;
};

double tm_interface(const Medium& i, const Medium& j) {
  const bool inf_i = std::isinf(i.eps);
  const bool inf_j = std::isinf(j.eps);
  if (inf_i && inf_j) return 0.0;
  if (inf_j) return i.q > 0.0 ? -1.0 : 0.0;
  if (inf_i) return j.q > 0.0 ? 1.0 : 0.0;
  const double num = j.q * i.eps - i.q * j.eps;
  const double den = j.q * i.eps + i.q * j.eps;
  return den > 0.0 ? num / den : 0.0;
}

double te_interface(const Medium& i, const Medium& j) {
  const double den = j.q + i.q;
  return den > 0.0 ? (j.q - i.q) / den : 0.0;
}

double compose(double outer, double inner, double attenuation) {
  const double t = inner * attenuation;
  return (outer + t) / (1.0 + outer * t);
}

/// Reflection of the coated half-space seen from the gap. `phases[k]` is
/// 2 ρ_k a_k for coating k (ordered from the metal outward).
Reflection stack_reflection(const Medium& metal, std::span<const Medium> coatings,
                            std::span<const double> phases, const Medium& gap) {
  if (coatings.empty()) {
    return {tm_interface(gap, metal), te_interface(gap, metal)};
  }
  Reflection r{tm_interface(coatings[0], metal), te_interface(coatings[0], metal)};
  for (std::size_t k = 0; k < coatings.size(); ++k) {
    const Medium& outer = (k + 1 < coatings.size()) ? coatings[k + 1] : gap;
    const double att = std::exp(-phases[k]);
    r.tm = compose(tm_interface(outer, coatings[k]), r.tm, att);
    r.te = compose(te_interface(outer, coatings[k]), r.te, att);
  }
  return r;
}

/// Per-frequency data for the y-integral: y = 2 ρ_gap d, and for every other
/// medium q_m = sqrt(y² + offset_m) with offset_m = (2d/c)²·ξ²(ε_m - ε_gap).
struct FrequencySlice {
  double eps_metal;
  double eps_gap;
  double offset_metal;
  std::vector<double> eps_coat;
  std::vector<double> offset_coat;
  std::vector<double> thickness_over_d;
};

double slice_integrand(const FrequencySlice& s, double y, std::vector<Medium>& coat_buf,
                       std::vector<double>& phase_buf) {
  if (!(y > 0.0)) return 0.0;
  const double y2 = y * y;
  const Medium gap{s.eps_gap, y};
  const Medium metal{s.eps_metal, std::sqrt(std::max(0.0, y2 + s.offset_metal))};
  for (std::size_t k = 0; k < s.eps_coat.size(); ++k) {
    const double q = std::sqrt(std::max(0.0, y2 + s.offset_coat[k]));
    coat_buf[k] = {s.eps_coat[k], q};
    phase_buf[k] = q * s.thickness_over_d[k];
  }
  const Reflection r = stack_reflection(metal, coat_buf, phase_buf, gap);
  const double decay = std::exp(-y);
  return y * (std::log1p(-r.tm * r.tm * decay) + std::log1p(-r.te * r.te * decay));
}

double integrate_slice(const FrequencySlice& s, double y_lo, double y_hi,
                       const QuadratureOptions& options) {
  if (!(y_hi > y_lo)) return 0.0;
  std::vector<Medium> coat_buf(s.eps_coat.size());
  std::vector<double> phase_buf(s.eps_coat.size());
  const auto f = [&](double y) { return slice_integrand(s, y, coat_buf, phase_buf); };

  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, y_lo, y_hi, options.max_depth, options.rel_tol, &error, &l1);
  if (!std::isfinite(value) || (error > options.rel_tol * std::abs(value) && error > 1e-290)) {
    std::ostringstream msg;
    msg << "p-integral did not converge (estimate " << value << ", error " << error << ")";
    throw AccuracyError(msg.str());
  }
  return value;
}

FrequencySlice make_slice(const LayerStack& stack, double xi, double d) {
  FrequencySlice s;
  const double scale = 2.0 * xi * d / c::speed_of_light;
  const double scale2 = scale * scale;
  s.eps_gap = evaluate(stack.gap, xi);
  s.eps_metal = evaluate(stack.metal, xi);
  s.offset_metal = scale2 * (s.eps_metal - s.eps_gap);
  for (const auto& layer : stack.coatings) {
    const double e = evaluate(layer.model, xi);
    s.eps_coat.push_back(e);
    s.offset_coat.push_back(scale2 * (e - s.eps_gap));
    s.thickness_over_d.push_back(layer.thickness / d);
  }
  return s;
}

}  // namespace

LayerStack LayerStack::single_coating(DielectricModel metal, DielectricModel coating,
                                      double thickness, DielectricModel gap) {
  if (thickness < 0.0) throw DomainError("coating thickness must be >= 0");
  LayerStack stack;
  stack.metal = std::move(metal);
  stack.coatings.push_back({std::move(coating), thickness});
  stack.gap = std::move(gap);
  return stack;
}

std::string LayerStack::describe() const {
  std::ostringstream os;
  os << dielectric::describe(metal);
  for (const auto& layer : coatings) {
    os << " | " << dielectric::describe(layer.model) << " [" << layer.thickness * 1e9 << " nm]";
  }
  os << " | gap " << dielectric::describe(gap);
  return os.str();
}

double MatsubaraContext::frequency(std::size_t n) const {
  return 2.0 * c::pi * static_cast<double>(n) * c::boltzmann * temperature / c::hbar;
}

Reflection fresnel_deltas(double eps_i, double eps_j, double p) {
  if (p < 1.0) throw DomainError("fresnel_deltas: p must be >= 1");
  if (eps_i < 1.0 || eps_j < 1.0) throw DomainError("fresnel_deltas: eps must be >= 1");
  const Medium i{eps_i, std::sqrt(p * p - 1.0 + eps_i)};
  const Medium j{eps_j, std::sqrt(p * p - 1.0 + eps_j)};
  return {tm_interface(i, j), te_interface(i, j)};
}

Reflection composite_delta_31(const LayerStack& stack, double xi, double p) {
  if (p < 1.0) throw DomainError("composite_delta_31: p must be >= 1");
  if (!(xi > 0.0)) throw DomainError("composite_delta_31: xi must be > 0");
  const auto medium = [&](const DielectricModel& m) {
    const double e = evaluate(m, xi);
    return Medium{e, std::sqrt(p * p - 1.0 + e)};
  };
  const Medium gap = medium(stack.gap);
  const Medium metal = medium(stack.metal);
  std::vector<Medium> coats;
  std::vector<double> phases;
  for (const auto& layer : stack.coatings) {
    coats.push_back(medium(layer.model));
    phases.push_back(2.0 * xi * layer.thickness * coats.back().q / c::speed_of_light);
  }
  return stack_reflection(metal, coats, phases, gap);
}

double integrand_I(const LayerStack& stack, double xi, double d, const QuadratureOptions& options) {
  if (!(xi > 0.0)) throw DomainError("integrand_I: xi must be > 0");
  if (!(d > 0.0)) throw DomainError("integrand_I: d must be > 0");
  const FrequencySlice s = make_slice(stack, xi, d);
  const double scale = 2.0 * xi * d / c::speed_of_light;
  // p = 1 and p = p_max mapped to y = scale · s_gap(p).
  const double y_lo = scale * std::sqrt(s.eps_gap);
  if (y_lo > kUnderflowExponent) return 0.0;
  const double y_max = scale * std::sqrt(options.p_max * options.p_max - 1.0 + s.eps_gap);
  const double y_hi = std::min(y_max, y_lo + kTailWidth);
  return integrate_slice(s, y_lo, y_hi, options);
}

double zero_frequency_I(const LayerStack& stack, double d, const QuadratureOptions& options) {
  if (!(d > 0.0)) throw DomainError("zero_frequency_I: d must be > 0");
  const double k2 = std::pow(2.0 * d / c::speed_of_light, 2);
  const double gap_xi2 = dielectric::static_xi2_susceptibility(stack.gap);

  FrequencySlice s;
  s.eps_gap = dielectric::static_permittivity(stack.gap);
  s.eps_metal = dielectric::static_permittivity(stack.metal);
  s.offset_metal = k2 * (dielectric::static_xi2_susceptibility(stack.metal) - gap_xi2);
  for (const auto& layer : stack.coatings) {
    s.eps_coat.push_back(dielectric::static_permittivity(layer.model));
    s.offset_coat.push_back(k2 * (dielectric::static_xi2_susceptibility(layer.model) - gap_xi2));
    s.thickness_over_d.push_back(layer.thickness / d);
  }
  if (std::isinf(s.eps_gap)) throw DomainError("zero_frequency_I: conducting gap medium");
  return integrate_slice(s, 0.0, kTailWidth, options);
}

FreeEnergy free_energy_per_area(const LayerStack& stack, double d, const MatsubaraContext& ctx,
                                const QuadratureOptions& options) {
  if (!(d > 0.0)) throw DomainError("free_energy_per_area: d must be > 0");
  if (!(ctx.temperature > 0.0)) throw DomainError("free_energy_per_area: T must be > 0");

  const auto term = [&](std::size_t n) {
    return n == 0 ? 0.5 * zero_frequency_I(stack, d, options)
                  : integrand_I(stack, ctx.frequency(n), d, options);
  };

  std::size_t count = std::min<std::size_t>(16, ctx.max_terms);
  double sum = 0.0;
  for (std::size_t n = 0; n < count; ++n) sum += term(n);

  while (true) {
    const std::size_t next = 2 * count;
    if (next > ctx.max_terms) {
      throw AccuracyError("Matsubara sum did not converge within " +
                          std::to_string(ctx.max_terms) + " terms at d=" + std::to_string(d) + " m");
    }
    double extended = sum;
    for (std::size_t n = count; n < next; ++n) extended += term(n);
    const bool converged = std::abs(extended - sum) <= ctx.rel_tol * std::abs(extended);
    sum = extended;
    count = next;
    if (converged) break;
  }
  const double prefactor = c::boltzmann * ctx.temperature / (8.0 * c::pi * d * d);
  return {prefactor * sum, count};
}

EnergyCurve energy_curve(const LayerStack& stack, std::span<const double> separations,
                         const MatsubaraContext& ctx, unsigned threads,
                         const QuadratureOptions& options) {
  EnergyCurve curve;
  curve.separations.assign(separations.begin(), separations.end());
  curve.energy_per_area.assign(separations.size(), 0.0);
  curve.terms.assign(separations.size(), 0);
  curve.temperature = ctx.temperature;
  curve.stack_description = stack.describe();

  for (std::size_t i = 0; i < separations.size(); ++i) {
    if (!(separations[i] > 0.0)) throw DomainError("energy_curve: separations must be > 0");
    if (i > 0 && !(separations[i] > separations[i - 1])) {
      throw DomainError("energy_curve: separations must be strictly increasing");
    }
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, separations.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= separations.size()) return;
      try {
        const auto fe = free_energy_per_area(stack, separations[i], ctx, options);
        curve.energy_per_area[i] = fe.energy_per_area;
        curve.terms[i] = fe.terms;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = separations.size();
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return curve;
}

ForceCurve normalized_force_curve(const LayerStack& stack, std::span<const double> separations,
                                  double effective_radius, const MatsubaraContext& ctx,
                                  unsigned threads) {
  if (!(effective_radius > 0.0)) throw DomainError("normalized_force_curve: radius must be > 0");
  const EnergyCurve energy = energy_curve(stack, separations, ctx, threads);
  ForceCurve curve;
  curve.radius = effective_radius;
  curve.temperature = ctx.temperature;
  curve.points.reserve(separations.size());
  for (std::size_t i = 0; i < separations.size(); ++i) {
    curve.points.push_back({energy.separations[i], energy.energy_per_area[i]});
  }
  return curve;
}

}  // namespace casimir::lifshitz
