#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace casimir::dielectric {

struct OpticalSample {
  double omega = 0.0;  // rad/s
  double n = 0.0;
  double k = 0.0;
};

/// Tabulated refractive index n + ik, strictly increasing in ω.
class OpticalDataTable {
 public:
  explicit OpticalDataTable(std::vector<OpticalSample> samples);

  std::span<const OpticalSample> samples() const { return samples_; }
  double omega_min() const { return samples_.front().omega; }
  double omega_max() const { return samples_.back().omega; }

  /// Largest ratio between neighbouring frequencies.
  double widest_gap_ratio() const;

  /// Delimiter-separated text with a header row and columns
  /// (frequency, unit tag ∈ {rad_s, eV, nm}, n, k). Rows may come in any
  /// order; nm rows reverse the frequency ordering so the table is sorted
  /// after conversion.
  static OpticalDataTable parse(std::istream& in);
  static OpticalDataTable load(const std::filesystem::path& path);

 private:
  std::vector<OpticalSample> samples_;
};

}  // namespace casimir::dielectric
