#include "casimir/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "casimir/errors.hpp"
#include "casimir/optical_data.hpp"
#include "casimir/table_io.hpp"
#include "casimir/units.hpp"

namespace casimir::config {

namespace {

using json = nlohmann::json;
using units::Dimension;

// Wraps one JSON object, remembers which keys were read and rejects the rest
// so that typos surface as errors instead of silently falling back to defaults.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("'" + path_ + "' must be an object");
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError("missing key '" + key_path(key) + "'");
    return j_.at(key);
  }

  std::optional<std::reference_wrapper<const json>> maybe(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    return std::cref(j_.at(key));
  }

  Section sub(const std::string& key) { return Section(raw(key), key_path(key)); }

  std::string text(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_string()) throw ConfigError("'" + key_path(key) + "' must be a string");
    return v.get<std::string>();
  }

  std::string text_or(const std::string& key, std::string fallback) {
    return has(key) ? text(key) : (seen_.insert(key), std::move(fallback));
  }

  double quantity(const std::string& key, Dimension dim) {
    return quantity_value(raw(key), dim, key_path(key));
  }

  double quantity_or(const std::string& key, Dimension dim, double fallback) {
    seen_.insert(key);
    return has(key) ? quantity(key, dim) : fallback;
  }

  double number(const std::string& key) { return number_value(raw(key), key_path(key)); }

  double number_or(const std::string& key, double fallback) {
    seen_.insert(key);
    return has(key) ? number(key) : fallback;
  }

  long long integer_or(const std::string& key, long long fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError("'" + key_path(key) + "' must be an integer");
    return v.get<long long>();
  }

  bool flag_or(const std::string& key, bool fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_boolean()) throw ConfigError("'" + key_path(key) + "' must be true or false");
    return v.get<bool>();
  }

  std::pair<double, double> range(const std::string& key, Dimension dim) {
    const auto& v = raw(key);
    const auto where = key_path(key);
    if (!v.is_array() || v.size() != 2) throw ConfigError("'" + where + "' must be a [lo, hi] pair");
    const double lo = quantity_value(v[0], dim, where + "[0]");
    const double hi = quantity_value(v[1], dim, where + "[1]");
    if (!(hi > lo)) throw ConfigError("'" + where + "' must have lo < hi");
    return {lo, hi};
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError("unknown key '" + key_path(it.key()) + "'");
    }
  }

  static double quantity_value(const json& v, Dimension dim, const std::string& where) {
    if (v.is_string()) return units::parse_quantity(v.get<std::string>(), dim, where);
    if (dim == Dimension::Dimensionless && v.is_number()) return v.get<double>();
    throw ConfigError("'" + where + "' must be a string with an explicit unit");
  }

  static double number_value(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError("'" + where + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + where + "' must be finite");
    return x;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

dielectric::DrudeParams read_drude(Section s) {
  dielectric::DrudeParams d;
  d.omega_p = s.quantity("omega_p", Dimension::AngularFrequency);
  d.gamma = s.quantity("gamma", Dimension::AngularFrequency);
  s.finish();
  if (!(d.omega_p > 0.0) || !(d.gamma > 0.0)) {
    throw ConfigError("'" + s.key_path("omega_p") + "' and gamma must be > 0");
  }
  return d;
}

MaterialSpec read_material(const std::string& name, Section s,
                           const std::filesystem::path& base) {
  MaterialSpec m;
  m.name = name;
  m.kind = s.text("model");
  const auto& kind = m.kind;
  if (kind == "vacuum") {
    m.closed_form = dielectric::Vacuum{};
  } else if (kind == "constant") {
    const double v = s.number("value");
    if (!(v >= 1.0)) throw ConfigError("'" + s.key_path("value") + "' must be >= 1");
    m.closed_form = dielectric::Constant{v};
  } else if (kind == "drude") {
    const double wp = s.quantity("omega_p", Dimension::AngularFrequency);
    const double g = s.quantity("gamma", Dimension::AngularFrequency);
    if (!(wp > 0.0) || !(g > 0.0)) throw ConfigError("'" + s.key_path("omega_p") + "' and gamma must be > 0");
    m.closed_form = dielectric::Drude{wp, g};
  } else if (kind == "plasma") {
    const double wp = s.quantity("omega_p", Dimension::AngularFrequency);
    if (!(wp > 0.0)) throw ConfigError("'" + s.key_path("omega_p") + "' must be > 0");
    m.closed_form = dielectric::Plasma{wp};
  } else if (kind == "oscillator") {
    const double n = s.number("n");
    const double wuv = s.quantity("omega_uv", Dimension::AngularFrequency);
    const auto q = s.integer_or("exponent", 1);
    if (!(n > 1.0)) throw ConfigError("'" + s.key_path("n") + "' must be > 1");
    if (!(wuv > 0.0)) throw ConfigError("'" + s.key_path("omega_uv") + "' must be > 0");
    if (q != 1 && q != 2) throw ConfigError("'" + s.key_path("exponent") + "' must be 1 or 2");
    std::optional<double> wp;
    if (s.has("electron_density")) {
      wp = dielectric::plasma_frequency_from_density(
          s.quantity("electron_density", Dimension::NumberDensity));
    } else {
      s.maybe("electron_density");
    }
    m.closed_form = dielectric::make_oscillator(n, wuv, static_cast<int>(q), wp);
  } else if (kind == "water") {
    dielectric::WaterOscillators w;
    auto debye = s.sub("debye");
    w.debye_strength = debye.number("strength");
    if (debye.has("relaxation_rate")) {
      const double rate = debye.quantity("relaxation_rate", Dimension::AngularFrequency);
      if (!(rate > 0.0)) throw ConfigError("'" + debye.key_path("relaxation_rate") + "' must be > 0");
      w.debye_time = 1.0 / rate;
      debye.maybe("relaxation_time");
    } else {
      debye.maybe("relaxation_rate");
      w.debye_time = debye.quantity("relaxation_time", Dimension::Time);
    }
    debye.finish();
    const auto& terms = s.raw("terms");
    if (!terms.is_array()) throw ConfigError("'" + s.key_path("terms") + "' must be a list");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Section t(terms[i], s.key_path("terms") + "[" + std::to_string(i) + "]");
      dielectric::OscillatorTerm term;
      term.strength = t.quantity("strength", Dimension::FrequencySquared);
      term.omega = t.quantity("omega", Dimension::AngularFrequency);
      term.damping = t.quantity("damping", Dimension::AngularFrequency);
      t.finish();
      w.terms.push_back(term);
    }
    m.closed_form = std::move(w);
  } else if (kind == "tabulated_kk") {
    TabulatedSpec t;
    t.optical_data = resolve(base, s.text("optical_data"));
    t.drude = read_drude(s.sub("drude"));
    if (auto g = s.maybe("grid")) {
      Section gs(g->get(), s.key_path("grid"));
      t.grid.xi_min = gs.quantity_or("xi_min", Dimension::AngularFrequency, t.grid.xi_min);
      t.grid.xi_max = gs.quantity_or("xi_max", Dimension::AngularFrequency, t.grid.xi_max);
      t.grid.points_per_decade =
          static_cast<int>(gs.integer_or("points_per_decade", t.grid.points_per_decade));
      gs.finish();
    }
    if (auto k = s.maybe("kk")) {
      Section ks(k->get(), s.key_path("kk"));
      t.grid.kk.omega_lo = ks.quantity_or("omega_lo", Dimension::AngularFrequency, t.grid.kk.omega_lo);
      t.grid.kk.omega_hi = ks.quantity_or("omega_hi", Dimension::AngularFrequency, t.grid.kk.omega_hi);
      t.grid.kk.points_per_decade =
          static_cast<int>(ks.integer_or("points_per_decade", t.grid.kk.points_per_decade));
      t.grid.kk.rel_tol = ks.number_or("rel_tol", t.grid.kk.rel_tol);
      ks.finish();
    }
    m.tabulated = std::move(t);
  } else {
    throw ConfigError("'" + s.key_path("model") + "': unknown model '" + kind +
                      "' (vacuum, constant, drude, plasma, oscillator, water, tabulated_kk)");
  }
  s.finish();
  return m;
}

contact::Material read_elastic(Section s) {
  contact::Material m;
  m.youngs_modulus = s.quantity("youngs_modulus", Dimension::Pressure);
  m.poisson_ratio = s.number("poisson_ratio");
  s.finish();
  return m;
}

}  // namespace

RunConfig parse(const std::string& text, const std::filesystem::path& base_dir,
                const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": malformed JSON: " + e.what());
  }

  RunConfig cfg;
  cfg.source = source;
  cfg.hash = io::to_hex(io::fnv1a64(text));
  Section top(root, "");

  if (auto mats = top.maybe("materials")) {
    Section ms(mats->get(), "materials");
    for (auto it = mats->get().begin(); it != mats->get().end(); ++it) {
      cfg.materials.emplace(it.key(), read_material(it.key(), ms.sub(it.key()), base_dir));
    }
    ms.finish();
  }

  if (auto st = top.maybe("stack")) {
    Section s(st->get(), "stack");
    StackSpec spec;
    spec.metal = s.text("metal");
    spec.gap = s.text_or("gap", "vacuum");
    if (auto coats = s.maybe("coatings")) {
      if (!coats->get().is_array()) throw ConfigError("'stack.coatings' must be a list");
      for (std::size_t i = 0; i < coats->get().size(); ++i) {
        Section c(coats->get()[i], "stack.coatings[" + std::to_string(i) + "]");
        CoatingSpec cs;
        cs.material = c.text("material");
        cs.thickness = c.quantity("thickness", Dimension::Length);
        if (cs.thickness < 0.0) throw ConfigError("'" + c.key_path("thickness") + "' must be >= 0");
        c.finish();
        spec.coatings.push_back(cs);
      }
    }
    s.finish();
    cfg.stack = std::move(spec);
  }

  if (auto g = top.maybe("geometry")) {
    Section s(g->get(), "geometry");
    const auto kind = s.text("kind");
    if (kind == "parallel_plates") {
      cfg.geometry = geometry::ParallelPlates{};
    } else if (kind == "sphere_flat") {
      cfg.geometry = geometry::SphereFlat{s.quantity("radius", Dimension::Length)};
    } else if (kind == "crossed_cylinders") {
      cfg.geometry = geometry::CrossedCylinders{s.quantity("radius1", Dimension::Length),
                                                s.quantity("radius2", Dimension::Length)};
    } else {
      throw ConfigError("'geometry.kind': unknown geometry '" + kind +
                        "' (parallel_plates, sphere_flat, crossed_cylinders)");
    }
    cfg.roughness.amplitude = s.quantity_or("roughness_amplitude", Dimension::Length, 0.0);
    if (cfg.roughness.amplitude < 0.0) {
      throw ConfigError("'geometry.roughness_amplitude' must be >= 0");
    }
    s.finish();
  }

  if (top.has("temperature")) {
    cfg.lifshitz.matsubara.temperature = top.quantity("temperature", Dimension::Temperature);
    if (!(cfg.lifshitz.matsubara.temperature > 0.0)) {
      throw ConfigError("'temperature' must be > 0");
    }
  } else {
    top.maybe("temperature");
  }
  cfg.analysis.synthesis.temperature = cfg.lifshitz.matsubara.temperature;

  if (auto l = top.maybe("lifshitz")) {
    Section s(l->get(), "lifshitz");
    auto& L = cfg.lifshitz;
    L.matsubara.rel_tol = s.number_or("rel_tol", L.matsubara.rel_tol);
    L.matsubara.max_terms =
        static_cast<std::size_t>(s.integer_or("max_terms", static_cast<long long>(L.matsubara.max_terms)));
    L.quadrature.p_max = s.number_or("p_max", L.quadrature.p_max);
    L.quadrature.rel_tol = s.number_or("quadrature_rel_tol", L.quadrature.rel_tol);
    L.threads = static_cast<unsigned>(s.integer_or("threads", 0));
    if (s.has("model_range")) {
      std::tie(L.model_d_min, L.model_d_max) = s.range("model_range", Dimension::Length);
    } else {
      s.maybe("model_range");
    }
    L.model_points_per_decade =
        static_cast<int>(s.integer_or("model_points_per_decade", L.model_points_per_decade));
    s.finish();
    if (!(L.matsubara.rel_tol > 0.0) || !(L.quadrature.rel_tol > 0.0) || L.matsubara.max_terms < 2) {
      throw ConfigError("'lifshitz' tolerances must be > 0 and max_terms >= 2");
    }
  }

  if (auto a = top.maybe("analysis")) {
    Section s(a->get(), "analysis");
    auto& A = cfg.analysis;
    if (s.has("fit_range")) {
      std::tie(A.fit_lo, A.fit_hi) = s.range("fit_range", Dimension::Length);
    } else {
      s.maybe("fit_range");
    }
    if (s.has("delta_span")) {
      std::tie(A.fit.delta_lo, A.fit.delta_hi) = s.range("delta_span", Dimension::Length);
    } else {
      s.maybe("delta_span");
    }
    if (s.has("alpha_span")) {
      // α carries the units of F/2πR times d^k: N for k = 1
      std::tie(A.fit.alpha_lo, A.fit.alpha_hi) = s.range("alpha_span", Dimension::Force);
    } else {
      s.maybe("alpha_span");
    }
    A.fit.electrostatic_exponent = static_cast<int>(s.integer_or("electrostatic_exponent", 1));
    if (A.fit.electrostatic_exponent != 1 && A.fit.electrostatic_exponent != 2) {
      throw ConfigError("'analysis.electrostatic_exponent' must be 1 or 2");
    }
    A.fit.fit_alpha = s.flag_or("fit_alpha", true);
    if (s.has("window")) {
      const auto w = s.integer_or("window", 0);
      if (w < 1) throw ConfigError("'analysis.window' must be >= 1");
      A.window = static_cast<std::size_t>(w);
    } else {
      s.maybe("window");
    }
    A.error_lower = s.quantity_or("error_lower", Dimension::Length, A.fit_lo);
    if (auto u = s.maybe("error_uppers")) {
      if (!u->get().is_array()) throw ConfigError("'analysis.error_uppers' must be a list");
      for (std::size_t i = 0; i < u->get().size(); ++i) {
        A.error_uppers.push_back(Section::quantity_value(
            u->get()[i], Dimension::Length, "analysis.error_uppers[" + std::to_string(i) + "]"));
      }
    }
    A.roughness_correction = s.flag_or("roughness_correction", true);
    A.curves = static_cast<std::size_t>(s.integer_or("curves", 5));
    if (A.curves < 1) throw ConfigError("'analysis.curves' must be >= 1");

    auto& S = A.synthesis;
    if (s.has("synthesis_range")) {
      std::tie(S.d_end, S.d_start) = s.range("synthesis_range", Dimension::Length);
    } else {
      s.maybe("synthesis_range");
    }
    S.approach_rate = s.quantity_or("approach_rate", Dimension::Velocity, S.approach_rate);
    S.sample_rate = s.quantity_or("sample_rate", Dimension::Frequency, S.sample_rate);
    S.noise = s.quantity_or("noise", Dimension::NormalizedForce, S.noise);
    S.noise_kind = analysis::parse_noise_kind(s.text_or("noise_kind", "gaussian"));
    S.spring_constant = s.quantity_or("spring_constant", Dimension::SpringConstant, S.spring_constant);
    if (s.has("jump_in_target")) {
      A.jump_in_target = s.quantity("jump_in_target", Dimension::Length);
    } else {
      s.maybe("jump_in_target");
    }
    S.random_phase = s.flag_or("random_phase", true);

    if (auto st = s.maybe("study")) {
      Section ss(st->get(), "analysis.study");
      if (ss.has("fit_range")) {
        std::tie(A.study.fit_lo, A.study.fit_hi) = ss.range("fit_range", Dimension::Length);
      } else {
        ss.maybe("fit_range");
      }
      A.study.extended_hi = ss.quantity_or("extended_upper", Dimension::Length, A.study.extended_hi);
      A.study.probe_shift = ss.quantity_or("probe_shift", Dimension::Length, A.study.probe_shift);
      A.study.fit_alpha = ss.flag_or("fit_alpha", A.study.fit_alpha);
      ss.finish();
    }
    s.finish();
  }

  if (auto c = top.maybe("contact")) {
    Section s(c->get(), "contact");
    contact::ContactSystem sys;
    sys.first = read_elastic(s.sub("first"));
    sys.second = read_elastic(s.sub("second"));
    sys.radius = s.quantity("radius", Dimension::Length);
    sys.interfacial_energy = s.quantity("interfacial_energy", Dimension::SurfaceEnergy);
    sys.equilibrium_separation =
        s.quantity_or("equilibrium_separation", Dimension::Length, sys.equilibrium_separation);
    s.finish();
    try {
      sys.combined_modulus();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("'contact': ") + e.what());
    }
    cfg.contact = sys;
  }

  if (auto p = top.maybe("paths")) {
    Section s(p->get(), "paths");
    if (s.has("output_dir")) {
      cfg.output_dir = resolve(base_dir, s.text("output_dir"));
    } else {
      s.maybe("output_dir");
      cfg.output_dir = base_dir;
    }
    if (auto fc = s.maybe("force_curves")) {
      if (!fc->get().is_array()) throw ConfigError("'paths.force_curves' must be a list");
      for (const auto& f : fc->get()) {
        if (!f.is_string()) throw ConfigError("'paths.force_curves' entries must be strings");
        cfg.force_curves.push_back(resolve(base_dir, f.get<std::string>()));
      }
    }
    s.finish();
  } else {
    cfg.output_dir = base_dir;
  }

  top.finish();

  // the study reuses the synthesis and fit settings
  cfg.analysis.study.synthesis = cfg.analysis.synthesis;
  cfg.analysis.study.fit = cfg.analysis.fit;
  cfg.analysis.study.curves = cfg.analysis.curves;
  return cfg;
}

RunConfig load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  auto cfg = parse(ss.str(), base, path.string());
  cfg.source = path;
  return cfg;
}

dielectric::DielectricModel RunConfig::material(const std::string& name) const {
  const auto it = materials.find(name);
  if (it == materials.end()) {
    if (name == "vacuum" || name == "air") return dielectric::Vacuum{};
    throw UsageError("unknown material '" + name + "'");
  }
  const auto& m = it->second;
  if (m.closed_form) return *m.closed_form;
  const auto table = dielectric::OpticalDataTable::load(m.tabulated->optical_data);
  return dielectric::build_tabulated_model(table, m.tabulated->drude, m.tabulated->grid);
}

lifshitz::LayerStack RunConfig::layer_stack() const {
  if (!stack) throw ConfigError("config has no 'stack' section");
  lifshitz::LayerStack s;
  s.metal = material(stack->metal);
  for (const auto& c : stack->coatings) s.coatings.push_back({material(c.material), c.thickness});
  s.gap = material(stack->gap);
  return s;
}

double RunConfig::effective_radius() const {
  if (!geometry) throw ConfigError("config has no 'geometry' section");
  return geometry::effective_radius(*geometry);
}

}  // namespace casimir::config
