#include "casimir/force_curve.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

std::vector<double> ForceCurve::separations() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.separation);
  return out;
}

std::vector<double> ForceCurve::forces() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.force);
  return out;
}

double ForceCurve::interpolate(double d) const {
  if (points.empty()) throw UsageError("interpolate: empty curve");
  if (d < points.front().separation || d > points.back().separation) {
    throw DomainError("interpolate: separation outside curve coverage");
  }
  const auto it = std::lower_bound(points.begin(), points.end(), d,
                                   [](const ForcePoint& p, double x) { return p.separation < x; });
  if (it == points.begin()) return it->force;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.separation == lo.separation) return hi.force;
  const double t = (d - lo.separation) / (hi.separation - lo.separation);
  return lo.force + t * (hi.force - lo.force);
}

ForceCurve ForceCurve::parse(std::istream& in, std::string_view source) {
  const auto table = io::read_numeric_table(in, source);
  const auto col_d = table.column("separation_nm");
  const auto col_f = table.column("force_uN_per_m");

  ForceCurve curve;
  curve.points.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    curve.points.push_back({row[col_d] * 1e-9, row[col_f] * 1e-6});
  }
  for (const auto& [key, value] : table.metadata.entries) {
    const std::string where = std::string(source) + " metadata '" + key + "'";
    if (key == "radius_m") curve.radius = io::parse_number(value, where);
    if (key == "temperature_K") curve.temperature = io::parse_number(value, where);
    if (key == "noise_floor_N_per_m") curve.noise_floor = io::parse_number(value, where);
    if (key == "jump_in_nm") curve.jump_in = io::parse_number(value, where) * 1e-9;
  }
  return curve;
}

ForceCurve ForceCurve::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open force curve '" + path.string() + "'");
  return parse(in, path.string());
}

void ForceCurve::save(const std::filesystem::path& path, io::Metadata metadata) const {
  metadata.add("radius_m", io::format_number(radius));
  metadata.add("temperature_K", io::format_number(temperature));
  metadata.add("noise_floor_N_per_m", io::format_number(noise_floor));
  if (jump_in) metadata.add("jump_in_nm", io::format_number(*jump_in * 1e9));
  std::vector<std::vector<double>> rows;
  rows.reserve(points.size());
  for (const auto& p : points) rows.push_back({p.separation * 1e9, p.force * 1e6});
  io::write_table_file(path, metadata, {"separation_nm", "force_uN_per_m"}, rows);
}

}  // namespace casimir
