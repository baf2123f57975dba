#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casimir/analysis.hpp"
#include "casimir/contact.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/geometry.hpp"
#include "casimir/lifshitz.hpp"

// JSON run configuration. Every dimensioned value is a string carrying its
// unit ("2.1 nm", "1.4e16 rad/s"); bare numbers are only accepted for
// dimensionless entries. Relative paths resolve against the config file.
namespace casimir::config {

struct TabulatedSpec {
  std::filesystem::path optical_data;
  dielectric::DrudeParams drude;
  dielectric::GridOptions grid;
};

/// Closed-form models are resolved at load time; tabulated ones are built on
/// first use so commands that never touch them do not need the data file.
struct MaterialSpec {
  std::string name;
  std::string kind;
  std::optional<dielectric::DielectricModel> closed_form;
  std::optional<TabulatedSpec> tabulated;
};

struct CoatingSpec {
  std::string material;
  double thickness = 0.0;
};

struct StackSpec {
  std::string metal;
  std::vector<CoatingSpec> coatings;
  std::string gap = "vacuum";
};

struct LifshitzSpec {
  lifshitz::MatsubaraContext matsubara;
  lifshitz::QuadratureOptions quadrature;
  unsigned threads = 0;
  // tabulated force model used by fit/errors/synth/study
  double model_d_min = 4e-9;
  double model_d_max = 600e-9;
  int model_points_per_decade = 40;
};

struct AnalysisSpec {
  double fit_lo = 20e-9;
  double fit_hi = 100e-9;
  analysis::FitOptions fit;
  std::optional<std::size_t> window;
  double error_lower = 20e-9;
  std::vector<double> error_uppers;
  analysis::SynthesisOptions synthesis;
  std::size_t curves = 5;
  std::optional<double> jump_in_target;  // solve the spring constant for this D
  analysis::DiscriminationOptions study;
  bool roughness_correction = true;
};

struct RunConfig {
  std::filesystem::path source;
  std::string hash;  // FNV-1a of the raw file bytes
  std::map<std::string, MaterialSpec> materials;
  std::optional<StackSpec> stack;
  std::optional<geometry::Geometry> geometry;
  geometry::RoughnessSpec roughness;
  LifshitzSpec lifshitz;
  AnalysisSpec analysis;
  std::optional<contact::ContactSystem> contact;
  std::filesystem::path output_dir = ".";
  std::vector<std::filesystem::path> force_curves;

  /// Builds (and for tabulated data, KK-transforms) a named material.
  /// "vacuum" and "air" are always defined. Throws UsageError for unknown names.
  dielectric::DielectricModel material(const std::string& name) const;
  lifshitz::LayerStack layer_stack() const;
  double effective_radius() const;
};

RunConfig parse(const std::string& text, const std::filesystem::path& base_dir,
                const std::string& source = "config");
RunConfig load(const std::filesystem::path& path);

}  // namespace casimir::config
