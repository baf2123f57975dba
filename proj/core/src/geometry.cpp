#include "casimir/geometry.hpp"

#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::geometry {

namespace c = casimir::constants;

double casimir_pressure_plates(double d) {
  if (!(d > 0.0)) throw DomainError("casimir_pressure_plates: d must be > 0");
  return -c::pi * c::pi * c::hbar_c / (240.0 * d * d * d * d);
}

double casimir_energy_plates(double d) {
  if (!(d > 0.0)) throw DomainError("casimir_energy_plates: d must be > 0");
  return -c::pi * c::pi * c::hbar_c / (720.0 * d * d * d);
}

double effective_radius(const Geometry& geom) {
  if (const auto* s = std::get_if<SphereFlat>(&geom)) {
    if (!(s->radius > 0.0)) throw GeometryError("sphere radius must be > 0");
    return s->radius;
  }
  if (const auto* x = std::get_if<CrossedCylinders>(&geom)) {
    if (!(x->radius1 > 0.0) || !(x->radius2 > 0.0)) {
      throw GeometryError("cylinder radii must be > 0");
    }
    return std::sqrt(x->radius1 * x->radius2);
  }
  throw GeometryError("parallel plates have no effective radius");
}

double casimir_force_curved(double D, const Geometry& geom) {
  if (std::holds_alternative<ParallelPlates>(geom)) {
    throw GeometryError("casimir_force_curved: use the pressure form for parallel plates");
  }
  if (!(D > 0.0)) throw DomainError("casimir_force_curved: D must be > 0");
  const double R = effective_radius(geom);
  return -c::pi * c::pi * c::pi * R * c::hbar_c / (360.0 * D * D * D);
}

double roughness_factor(double D, const RoughnessSpec& rough) {
  if (!(D > 0.0)) throw DomainError("roughness_factor: D must be > 0");
  if (rough.amplitude < 0.0) throw DomainError("roughness amplitude must be >= 0");
  const double ratio = rough.amplitude / D;
  if (ratio >= 0.5) {
    std::ostringstream msg;
    msg << "roughness correction invalid: A_r/D = " << ratio << " >= 0.5 at D = " << D * 1e9
        << " nm";
    throw ValidityError(msg.str());
  }
  return 1.0 + 6.0 * ratio * ratio;
}

double temperature_parameter(double T, double D) {
  if (!(T > 0.0) || !(D > 0.0)) throw DomainError("temperature_parameter: T and D must be > 0");
  return c::boltzmann * T * D / c::hbar_c;
}

ForceCurve apply_corrections(const ForceCurve& curve, const RoughnessSpec& rough) {
  ForceCurve out = curve;
  for (auto& p : out.points) p.force *= roughness_factor(p.separation, rough);
  return out;
}

lifshitz::EnergyCurve apply_corrections(const lifshitz::EnergyCurve& curve,
                                        const RoughnessSpec& rough) {
  lifshitz::EnergyCurve out = curve;
  for (std::size_t i = 0; i < out.separations.size(); ++i) {
    out.energy_per_area[i] *= roughness_factor(out.separations[i], rough);
  }
  return out;
}

}  // namespace casimir::geometry
