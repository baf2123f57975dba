#include "casimir/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <unordered_map>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::units {

namespace c = casimir::constants;

double ev_to_rad_per_s(double ev) { return ev * c::rad_per_s_per_ev; }

double rad_per_s_to_ev(double omega) { return omega / c::rad_per_s_per_ev; }

double nm_to_rad_per_s(double wavelength_nm) {
  if (!(wavelength_nm > 0.0)) {
    throw DomainError("wavelength must be positive");
  }
  return 2.0 * c::pi * c::speed_of_light / (wavelength_nm * 1e-9);
}

double ev_to_plasma_wavelength(double energy_ev) {
  if (!(energy_ev > 0.0)) {
    throw DomainError("photon energy must be positive");
  }
  const double omega = ev_to_rad_per_s(energy_ev);
  return 2.0 * c::pi * c::speed_of_light / omega * 1e9;
}

double frequency_from_tag(double value, std::string_view tag) {
  if (tag == "rad_s" || tag == "rad/s") return value;
  if (tag == "eV" || tag == "ev") return ev_to_rad_per_s(value);
  if (tag == "nm") return nm_to_rad_per_s(value);
  throw DataQualityError("unknown frequency unit tag '" + std::string(tag) +
                         "' (expected rad_s, eV or nm)");
}

namespace {

struct UnitEntry {
  Dimension dim;
  double scale;  // SI value of one unit
};

const std::unordered_map<std::string, UnitEntry>& unit_table() {
  static const std::unordered_map<std::string, UnitEntry> table = {
      {"m", {Dimension::Length, 1.0}},
      {"mm", {Dimension::Length, 1e-3}},
      {"um", {Dimension::Length, 1e-6}},
      {"µm", {Dimension::Length, 1e-6}},
      {"nm", {Dimension::Length, 1e-9}},
      {"A", {Dimension::Length, 1e-10}},
      {"Å", {Dimension::Length, 1e-10}},
      {"pm", {Dimension::Length, 1e-12}},

      {"rad/s", {Dimension::AngularFrequency, 1.0}},
      {"rad_s", {Dimension::AngularFrequency, 1.0}},
      {"eV", {Dimension::AngularFrequency, c::rad_per_s_per_ev}},

      {"K", {Dimension::Temperature, 1.0}},

      {"Pa", {Dimension::Pressure, 1.0}},
      {"kPa", {Dimension::Pressure, 1e3}},
      {"MPa", {Dimension::Pressure, 1e6}},
      {"GPa", {Dimension::Pressure, 1e9}},

      {"N", {Dimension::Force, 1.0}},
      {"mN", {Dimension::Force, 1e-3}},
      {"uN", {Dimension::Force, 1e-6}},
      {"µN", {Dimension::Force, 1e-6}},
      {"nN", {Dimension::Force, 1e-9}},

      {"N/m", {Dimension::NormalizedForce, 1.0}},
      {"mN/m", {Dimension::NormalizedForce, 1e-3}},
      {"uN/m", {Dimension::NormalizedForce, 1e-6}},
      {"µN/m", {Dimension::NormalizedForce, 1e-6}},

      {"J/m^2", {Dimension::SurfaceEnergy, 1.0}},
      {"J/m2", {Dimension::SurfaceEnergy, 1.0}},
      {"mJ/m^2", {Dimension::SurfaceEnergy, 1e-3}},
      {"mJ/m2", {Dimension::SurfaceEnergy, 1e-3}},

      {"m/s", {Dimension::Velocity, 1.0}},
      {"um/s", {Dimension::Velocity, 1e-6}},
      {"nm/s", {Dimension::Velocity, 1e-9}},

      {"Hz", {Dimension::Frequency, 1.0}},
      {"kHz", {Dimension::Frequency, 1e3}},

      {"m^-3", {Dimension::NumberDensity, 1.0}},
      {"1/m^3", {Dimension::NumberDensity, 1.0}},
      {"cm^-3", {Dimension::NumberDensity, 1e6}},

      {"(rad/s)^2", {Dimension::FrequencySquared, 1.0}},
      {"eV^2", {Dimension::FrequencySquared, c::rad_per_s_per_ev * c::rad_per_s_per_ev}},

      {"s", {Dimension::Time, 1.0}},
      {"ps", {Dimension::Time, 1e-12}},
      {"fs", {Dimension::Time, 1e-15}},
      {"eV^-1", {Dimension::Time, 1.0 / c::rad_per_s_per_ev}},

      {"1", {Dimension::Dimensionless, 1.0}},
  };
  return table;
}

// N/m is both a normalized force and a spring constant.
bool compatible(Dimension have, Dimension want) {
  if (have == want) return true;
  return have == Dimension::NormalizedForce && want == Dimension::SpringConstant;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension expected, std::string_view key) {
  const std::string_view body = trim(text);
  const std::string where = "'" + std::string(key) + "'";

  double value = 0.0;
  const auto* first = body.data();
  const auto* last = body.data() + body.size();
  // std::from_chars rejects a leading '+'.
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{}) {
    throw ConfigError("key " + where + ": cannot parse number from '" + std::string(body) + "'");
  }
  const std::string_view unit = trim(std::string_view(ptr, static_cast<size_t>(last - ptr)));

  if (unit.empty()) {
    if (expected == Dimension::Dimensionless) return value;
    throw ConfigError("key " + where + ": missing unit in '" + std::string(body) + "'");
  }
  const auto& table = unit_table();
  const auto it = table.find(std::string(unit));
  if (it == table.end() || !compatible(it->second.dim, expected)) {
    throw ConfigError("key " + where + ": unit '" + std::string(unit) +
                      "' is not valid for this quantity");
  }
  return value * it->second.scale;
}

}  // namespace casimir::units
