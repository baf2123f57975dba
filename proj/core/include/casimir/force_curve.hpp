#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "casimir/table_io.hpp"

namespace casimir {

struct ForcePoint {
  double separation = 0.0;  // m
  double force = 0.0;       // F/2πR, N/m
};

/// Normalized force-distance samples plus the measurement metadata.
struct ForceCurve {
  std::vector<ForcePoint> points;
  double radius = 0.0;          // m
  double temperature = 298.0;   // K
  double noise_floor = 1e-7;    // N/m
  std::optional<double> jump_in;  // m, first sampled separation that was unstable

  std::vector<double> separations() const;
  std::vector<double> forces() const;

  /// Linear interpolation in separation; the curve must be sorted and `d` covered.
  double interpolate(double d) const;

  /// Columns separation_nm, force_uN_per_m; metadata radius_m, temperature_K,
  /// noise_floor_N_per_m and jump_in_nm as '#' lines.
  static ForceCurve parse(std::istream& in, std::string_view source = "force curve");
  static ForceCurve load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path, io::Metadata metadata = {}) const;
};

/// A normalized force model D -> F/2πR (N/m).
using ForceModel = std::function<double(double)>;

}  // namespace casimir
