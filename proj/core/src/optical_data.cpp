#include "casimir/optical_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/table_io.hpp"
#include "casimir/units.hpp"

namespace casimir::dielectric {

OpticalDataTable::OpticalDataTable(std::vector<OpticalSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw DataQualityError("optical table needs at least 2 samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!(s.omega > 0.0) || !std::isfinite(s.omega)) {
      throw DataQualityError("optical table: non-positive frequency at row " + std::to_string(i));
    }
    if (!(s.n >= 0.0) || !(s.k >= 0.0)) {
      throw DataQualityError("optical table: negative n or k at row " + std::to_string(i));
    }
    if (i > 0 && !(s.omega > samples_[i - 1].omega)) {
      throw DataQualityError("optical table: frequencies not strictly increasing at row " +
                             std::to_string(i));
    }
  }
}

double OpticalDataTable::widest_gap_ratio() const {
  double widest = 1.0;
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    widest = std::max(widest, samples_[i].omega / samples_[i - 1].omega);
  }
  return widest;
}

OpticalDataTable OpticalDataTable::parse(std::istream& in) {
  std::vector<OpticalSample> samples;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto fields = io::split_fields(line);
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const std::string where = "optical data line " + std::to_string(line_no);
    if (fields.size() != 4) {
      throw DataQualityError(where + ": expected 4 fields (frequency, unit, n, k)");
    }
    const double value = io::parse_number(fields[0], where);
    OpticalSample s;
    s.omega = units::frequency_from_tag(value, fields[1]);
    s.n = io::parse_number(fields[2], where);
    s.k = io::parse_number(fields[3], where);
    samples.push_back(s);
  }
  std::sort(samples.begin(), samples.end(),
            [](const OpticalSample& a, const OpticalSample& b) { return a.omega < b.omega; });
  return OpticalDataTable(std::move(samples));
}

OpticalDataTable OpticalDataTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open optical data file '" + path.string() + "'");
  return parse(in);
}

}  // namespace casimir::dielectric
