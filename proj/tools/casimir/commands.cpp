#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <sstream>

#include "casimir/analysis.hpp"
#include "casimir/config.hpp"
#include "casimir/constants.hpp"
#include "casimir/contact.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/table_io.hpp"
#include "casimir/units.hpp"

#ifndef CASIMIR_VERSION
#define CASIMIR_VERSION "dev"
#endif

namespace casimir::cli {

namespace fs = std::filesystem;
using units::Dimension;

namespace {

void note(const Common& c, const std::string& msg) {
  if (!c.quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

config::RunConfig load_config(const Common& c) {
  if (c.config.empty()) throw UsageError("--config is required");
  return config::load(c.config);
}

fs::path output_dir(const Common& c, const config::RunConfig& cfg) {
  fs::path dir = c.out_dir.empty() ? cfg.output_dir : fs::path(c.out_dir);
  fs::create_directories(dir);
  return dir;
}

io::Metadata header(const std::string& command, const config::RunConfig& cfg) {
  io::Metadata m;
  m.add("command", command);
  m.add("casimir_version", CASIMIR_VERSION);
  m.add("constants", constants::kVersion);
  m.add("config_hash", cfg.hash);
  return m;
}

std::string render_metadata(const io::Metadata& m) {
  std::string out;
  for (const auto& [k, v] : m.entries) out += "# " + k + ": " + v + "\n";
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 2) throw UsageError("need at least 2 points");
  if (!(lo > 0.0) || !(hi > lo)) throw UsageError("range must satisfy 0 < min < max");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  return g;
}

// Lifshitz model for the configured stack, tabulated once per command.
struct Models {
  std::shared_ptr<const analysis::TabulatedModel> raw;
  double roughness = 0.0;
  double model_d_min = 0.0;

  ForceModel pick(bool corrected) const {
    if (!corrected || roughness == 0.0) return raw->as_model();
    return [raw = raw, spec = geometry::RoughnessSpec{roughness}](double d) {
      return (*raw)(d) * geometry::roughness_factor(d, spec);
    };
  }

  // smallest D the picked model accepts
  double valid_min(bool corrected) const {
    const double lo = model_d_min * (1.0 + 1e-9);
    return corrected && roughness > 0.0 ? std::max(lo, 2.0 * roughness * (1.0 + 1e-9)) : lo;
  }
};

Models build_models(const Common& c, const config::RunConfig& cfg) {
  const auto& L = cfg.lifshitz;
  const auto stack = cfg.layer_stack();
  const double decades = std::log10(L.model_d_max / L.model_d_min);
  const int n = static_cast<int>(std::ceil(decades * L.model_points_per_decade)) + 1;
  const auto seps = log_grid(L.model_d_min, L.model_d_max, n);
  note(c, "tabulating Lifshitz model on " + std::to_string(n) + " separations");
  const auto curve = lifshitz::energy_curve(stack, seps, L.matsubara, L.threads, L.quadrature);
  Models m;
  m.raw = std::make_shared<const analysis::TabulatedModel>(curve.separations, curve.energy_per_area);
  m.roughness = cfg.roughness.amplitude;
  m.model_d_min = L.model_d_min;
  return m;
}

std::vector<ForceCurve> load_curves(const std::vector<std::string>& files,
                                    const config::RunConfig& cfg) {
  std::vector<fs::path> paths(files.begin(), files.end());
  if (paths.empty()) paths = cfg.force_curves;
  if (paths.empty()) throw UsageError("no force-curve files given (arguments or paths.force_curves)");
  std::vector<ForceCurve> curves;
  for (const auto& p : paths) {
    if (!fs::exists(p)) throw UsageError("force-curve file not found: '" + p.string() + "'");
    curves.push_back(ForceCurve::load(p));
  }
  return curves;
}

std::string fit_block(const analysis::FitResult& r, int exponent) {
  std::ostringstream os;
  os << "delta_nm: " << fmt("%.4f", r.delta * 1e9) << "\n"
     << "alpha_" << (exponent == 1 ? "N" : "N_m") << ": " << fmt("%.6e", r.alpha) << "\n"
     << "objective_N2_per_m2: " << fmt("%.6e", r.objective) << "\n"
     << "rms_uN_per_m: " << fmt("%.6e", r.rms * 1e6) << "\n"
     << "rms_relative_percent: " << fmt("%.4f", r.rms_relative * 100.0) << "\n"
     << "fit_range_nm: " << fmt("%.3f", r.range_lo * 1e9) << " " << fmt("%.3f", r.range_hi * 1e9)
     << "\n"
     << "points: " << r.points << "\n";
  return os.str();
}

}  // namespace

int cmd_epsilon(const Common& c, const EpsilonArgs& a) {
  const auto cfg = load_config(c);
  const double lo = units::parse_quantity(a.xi_min, Dimension::AngularFrequency, "--xi-min");
  const double hi = units::parse_quantity(a.xi_max, Dimension::AngularFrequency, "--xi-max");
  const auto model = cfg.material(a.material);
  const auto grid = log_grid(lo, hi, a.points);
  std::vector<std::vector<double>> rows;
  for (double xi : grid) rows.push_back({xi, dielectric::evaluate(model, xi)});
  auto meta = header("epsilon", cfg);
  meta.add("material", a.material);
  meta.add("model", dielectric::describe(model));
  const auto path = output_dir(c, cfg) / ("epsilon_" + a.material + ".csv");
  io::write_table_file(path, meta, {"xi_rad_per_s", "eps"}, rows);
  note(c, "wrote " + path.string());
  return 0;
}

int cmd_force(const Common& c, const ForceArgs& a) {
  const auto cfg = load_config(c);
  const double lo = units::parse_quantity(a.d_min, Dimension::Length, "--d-min");
  const double hi = units::parse_quantity(a.d_max, Dimension::Length, "--d-max");
  const auto seps = log_grid(lo, hi, a.points);
  const auto stack = cfg.layer_stack();
  const auto& L = cfg.lifshitz;
  const auto curve = lifshitz::energy_curve(stack, seps, L.matsubara, L.threads, L.quadrature);
  const geometry::RoughnessSpec rough{a.no_roughness ? 0.0 : cfg.roughness.amplitude};

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < seps.size(); ++i) {
    const double d = seps[i];
    const double raw = curve.energy_per_area[i];
    const double corrected = raw * geometry::roughness_factor(d, rough);
    const double ideal = geometry::casimir_energy_plates(d);
    rows.push_back({d * 1e9, raw * 1e6, corrected * 1e6, ideal * 1e6,
                    static_cast<double>(curve.terms[i])});
    note(c, "D = " + fmt("%.3f", d * 1e9) + " nm: " + std::to_string(curve.terms[i]) +
                " Matsubara terms");
  }
  auto meta = header("force", cfg);
  meta.add("stack", curve.stack_description);
  meta.add("temperature_K", io::format_number(curve.temperature));
  meta.add("roughness_amplitude_nm", io::format_number(rough.amplitude * 1e9));
  const auto path = output_dir(c, cfg) / "force.csv";
  io::write_table_file(path, meta,
                       {"separation_nm", "force_raw_uN_per_m", "force_corrected_uN_per_m",
                        "force_ideal_uN_per_m", "matsubara_terms"},
                       rows);
  note(c, "wrote " + path.string());
  return 0;
}

int cmd_synth(const Common& c, const SynthArgs& a) {
  const auto cfg = load_config(c);
  const double delta = units::parse_quantity(a.delta, Dimension::Length, "--delta");
  const double alpha = units::parse_quantity(a.alpha, Dimension::Force, "--alpha");
  const int k = cfg.analysis.fit.electrostatic_exponent;
  const bool corrected = cfg.analysis.roughness_correction && !a.no_roughness;
  const auto models = build_models(c, cfg);
  const auto base = models.pick(corrected);
  // data frame: F_exp(x) = F_calc(x - δ) + α / (x - δ)^k
  const ForceModel truth = [&](double x) {
    return base(x - delta) + analysis::electrostatic_term(x - delta, alpha, k);
  };

  auto opts = cfg.analysis.synthesis;
  opts.radius = cfg.effective_radius();
  opts.d_end = std::max(opts.d_end, delta + models.valid_min(corrected) * (1.0 + 1e-3));
  if (a.spring_constant) {
    opts.spring_constant =
        units::parse_quantity(*a.spring_constant, Dimension::SpringConstant, "--spring-constant");
  }
  std::optional<double> target = cfg.analysis.jump_in_target;
  if (a.jump_in) target = units::parse_quantity(*a.jump_in, Dimension::Length, "--jump-in");
  if (target) opts.spring_constant = analysis::spring_constant_for_jump_in(truth, opts.radius, *target);

  const int n = a.curves.value_or(static_cast<int>(cfg.analysis.curves));
  if (n < 1) throw UsageError("--curves must be >= 1");
  std::vector<std::pair<fs::path, std::string>> outputs;
  const auto dir = output_dir(c, cfg);
  for (int i = 0; i < n; ++i) {
    opts.seed = c.seed + static_cast<std::uint64_t>(i);
    const auto curve = analysis::synthesize_measurement(truth, opts);
    auto meta = header("synth", cfg);
    meta.add("seed", std::to_string(opts.seed));
    meta.add("delta_nm", io::format_number(delta * 1e9));
    meta.add("alpha", io::format_number(alpha));
    meta.add("electrostatic_exponent", std::to_string(k));
    meta.add("roughness_corrected", corrected ? "true" : "false");
    meta.add("noise_kind", std::string(analysis::to_string(opts.noise_kind)));
    meta.add("spring_constant_N_per_m", io::format_number(opts.spring_constant));
    char name[32];
    std::snprintf(name, sizeof name, "synth_%02d.csv", i + 1);
    curve.save(dir / name, meta);
    note(c, "wrote " + (dir / name).string() + " (" + std::to_string(curve.points.size()) +
                " points" +
                (curve.jump_in ? ", jump-in at " + fmt("%.2f", *curve.jump_in * 1e9) + " nm" : "") +
                ")");
  }
  return 0;
}

int cmd_fit(const Common& c, const FitArgs& a) {
  const auto cfg = load_config(c);
  const auto curves = load_curves(a.files, cfg);
  const auto data = analysis::average_curves(curves, cfg.analysis.window);
  const bool corrected = cfg.analysis.roughness_correction && !a.no_roughness;
  const auto models = build_models(c, cfg);
  const auto model = models.pick(corrected);
  const auto& A = cfg.analysis;
  const int k = A.fit.electrostatic_exponent;

  analysis::FitResult r;
  try {
    r = analysis::fit_curve(data, model, A.fit_lo, A.fit_hi, A.fit);
  } catch (const analysis::FitError& e) {
    std::fprintf(stderr, "fit did not converge; best so far:\n%s",
                 fit_block(e.best(), k).c_str());
    throw;
  }

  auto meta = header("fit", cfg);
  meta.add("inputs", std::to_string(curves.size()));
  meta.add("roughness_corrected", corrected ? "true" : "false");
  std::string report = render_metadata(meta);
  report += fit_block(r, k);
  report += std::string("minimizer: ") + (r.used_simplex ? "coordinate descent + simplex" : "coordinate descent") + "\n";
  report += "evaluations: " + std::to_string(r.evaluations) + "\n";

  std::vector<std::vector<double>> overlay;
  for (const auto& p : data.points) {
    const double d = p.separation - r.delta;
    if (d < A.fit_lo || d > A.fit_hi) continue;
    const double fm = model(d);
    const double fe = analysis::electrostatic_term(d, r.alpha, k);
    overlay.push_back({d * 1e9, p.force * 1e6, fm * 1e6, (fm + fe) * 1e6,
                       (p.force - fm - fe) * 1e6});
  }
  std::vector<std::vector<double>> averaged;
  for (const auto& p : data.points) averaged.push_back({p.separation * 1e9, p.force * 1e6});

  const auto dir = output_dir(c, cfg);
  io::write_text_file(dir / "fit_report.txt", report);
  io::write_table_file(dir / "fit_overlay.csv", meta,
                       {"separation_nm", "force_exp_shifted_uN_per_m", "force_model_uN_per_m",
                        "force_model_total_uN_per_m", "residual_uN_per_m"},
                       overlay);
  io::write_table_file(dir / "averaged.csv", meta, {"separation_nm", "force_uN_per_m"}, averaged);
  if (!c.quiet) std::fputs(fit_block(r, k).c_str(), stdout);
  return 0;
}

int cmd_errors(const Common& c, const ErrorsArgs& a) {
  const auto cfg = load_config(c);
  const double delta = units::parse_quantity(a.delta, Dimension::Length, "--delta");
  auto data = analysis::average_curves(load_curves(a.files, cfg), cfg.analysis.window);
  for (auto& p : data.points) p.separation -= delta;
  const bool corrected = cfg.analysis.roughness_correction && !a.no_roughness;
  const auto models = build_models(c, cfg);
  const auto model = models.pick(corrected);
  const auto& A = cfg.analysis;

  std::vector<double> uppers = A.error_uppers;
  if (uppers.empty()) {
    for (double u = A.error_lower + 10e-9; u <= 300e-9 + 1e-12; u += 10e-9) uppers.push_back(u);
  }
  const auto prof = analysis::rms_error_profile(data, model, A.error_lower, uppers);
  const auto pts = analysis::pointwise_errors(data, model, A.error_lower, uppers.back());

  auto meta = header("errors", cfg);
  meta.add("delta_nm", io::format_number(delta * 1e9));
  meta.add("lower_nm", io::format_number(A.error_lower * 1e9));
  meta.add("roughness_corrected", corrected ? "true" : "false");
  std::vector<std::vector<double>> prows, wrows;
  for (std::size_t i = 0; i < prof.upper_bounds.size(); ++i) {
    prows.push_back({prof.upper_bounds[i] * 1e9, prof.accumulated_rms[i] * 1e6,
                     prof.relative_to_shortest[i], static_cast<double>(prof.counts[i])});
  }
  for (const auto& p : pts) wrows.push_back({p.separation * 1e9, p.residual * 1e6, p.relative});
  const auto dir = output_dir(c, cfg);
  io::write_table_file(dir / "error_profile.csv", meta,
                       {"upper_nm", "rms_uN_per_m", "rms_relative", "points"}, prows);
  io::write_table_file(dir / "pointwise_errors.csv", meta,
                       {"separation_nm", "residual_uN_per_m", "relative_error"}, wrows);
  note(c, "wrote error_profile.csv and pointwise_errors.csv to " + dir.string());
  return 0;
}

int cmd_jkr(const Common& c) {
  const auto cfg = load_config(c);
  if (!cfg.contact) throw ConfigError("config has no 'contact' section");
  const auto& sys = *cfg.contact;
  const auto rep = contact::analyze(sys);

  auto meta = header("jkr", cfg);
  std::ostringstream os;
  os << render_metadata(meta)
     << "combined_modulus_Pa: " << fmt("%.6e", rep.combined_modulus) << "\n"
     << "tabor_parameter: " << fmt("%.4f", rep.tabor) << "\n"
     << "regime: " << contact::to_string(rep.model) << "\n"
     << "contact_radius_zero_load_um: " << fmt("%.6f", rep.contact_radius_zero_load * 1e6) << "\n"
     << "central_displacement_zero_load_nm: " << fmt("%.6f", rep.displacement_zero_load * 1e9) << "\n"
     << "pull_off_force_N: " << fmt("%.6e", rep.pull_off) << "\n";

  std::vector<std::vector<double>> rows;
  const double f0 = rep.pull_off;
  const int n = 41;
  for (int i = 0; i < n; ++i) {
    // from pull-off up to four times its magnitude in compression
    const double load = f0 + (5.0 * std::abs(f0)) * i / (n - 1);
    rows.push_back({load, contact::jkr_contact_radius(sys, load) * 1e6,
                    contact::jkr_central_displacement(sys, load) * 1e9});
  }
  const auto dir = output_dir(c, cfg);
  io::write_text_file(dir / "jkr_report.txt", os.str());
  io::write_table_file(dir / "jkr_curve.csv", meta,
                       {"load_N", "contact_radius_um", "central_displacement_nm"}, rows);
  if (!c.quiet) std::fputs(os.str().c_str(), stdout);
  return 0;
}

int cmd_study(const Common& c) {
  const auto cfg = load_config(c);
  if (!(cfg.roughness.amplitude > 0.0)) {
    throw ConfigError("'geometry.roughness_amplitude' must be > 0 for the discrimination study");
  }
  const auto models = build_models(c, cfg);
  auto opts = cfg.analysis.study;
  opts.synthesis.radius = cfg.effective_radius();
  opts.synthesis.seed = c.seed;
  opts.synthesis.d_end = std::max(opts.synthesis.d_end, models.valid_min(true) * (1.0 + 1e-3));
  const auto rep =
      analysis::model_discrimination_study(models.pick(true), models.pick(false), opts);

  const int k = opts.fit.electrostatic_exponent;
  auto meta = header("study", cfg);
  meta.add("seed", std::to_string(c.seed));
  meta.add("roughness_amplitude_nm", io::format_number(cfg.roughness.amplitude * 1e9));
  meta.add("curves", std::to_string(opts.curves));
  std::ostringstream os;
  os << render_metadata(meta);
  os << "[corrected data, corrected model]\n" << fit_block(rep.true_model, k) << "\n";
  os << "[corrected data, uncorrected model]\n" << fit_block(rep.wrong_model, k) << "\n";
  os << "compensating_shift_nm: " << fmt("%.4f", rep.wrong_model.delta * 1e9) << "\n"
     << "rms_relative_unshifted_percent: " << fmt("%.4f", rep.wrong_unshifted.rms_relative * 100) << "\n"
     << "rms_relative_shift_minus_probe_percent: " << fmt("%.4f", rep.probe_minus.rms_relative * 100) << "\n"
     << "rms_relative_shift_plus_probe_percent: " << fmt("%.4f", rep.probe_plus.rms_relative * 100) << "\n"
     << "probe_shift_nm: " << fmt("%.3f", opts.probe_shift * 1e9) << "\n"
     << "rms_relative_extended_percent: " << fmt("%.4f", rep.wrong_extended_rms_relative * 100) << "\n"
     << "extended_upper_nm: " << fmt("%.1f", opts.extended_hi * 1e9) << "\n"
     << "wrong_model_below_1_percent: " << (rep.wrong_model.rms_relative < 0.01 ? "yes" : "no") << "\n";

  const auto dir = output_dir(c, cfg);
  io::write_text_file(dir / "study_report.txt", os.str());
  if (!c.quiet) std::fputs(os.str().c_str(), stdout);
  return 0;
}

}  // namespace casimir::cli
