#include "casimir/contact.hpp"

#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::contact {

namespace {

constexpr double kPi = constants::pi;

void validate(const Material& m, const char* which) {
  if (!(m.youngs_modulus > 0.0)) {
    throw DomainError(std::string(which) + ": Young's modulus must be > 0");
  }
  if (!(m.poisson_ratio > 0.0 && m.poisson_ratio < 0.5)) {
    throw DomainError(std::string(which) + ": Poisson ratio must lie in (0, 0.5)");
  }
}

}  // namespace

double ContactSystem::combined_modulus() const {
  validate(first, "first material");
  validate(second, "second material");
  if (!(radius > 0.0)) throw DomainError("contact radius of curvature must be > 0");
  if (interfacial_energy < 0.0) throw DomainError("interfacial energy must be >= 0");
  if (!(equilibrium_separation > 0.0)) throw DomainError("equilibrium separation must be > 0");
  const double c1 = (1.0 - first.poisson_ratio * first.poisson_ratio) / first.youngs_modulus;
  const double c2 = (1.0 - second.poisson_ratio * second.poisson_ratio) / second.youngs_modulus;
  return 1.0 / (c1 + c2);
}

std::string_view to_string(AdhesionModel model) {
  switch (model) {
    case AdhesionModel::DMT: return "DMT";
    case AdhesionModel::JKR: return "JKR";
    case AdhesionModel::Transition: return "transition";
  }
  return "unknown";
}

double tabor_parameter(const ContactSystem& sys) {
  const double K = sys.combined_modulus();
  const double De = sys.equilibrium_separation;
  const double gamma = sys.interfacial_energy;
  return std::cbrt(sys.radius * gamma * gamma / (K * K * De * De * De));
}

AdhesionModel select_model(double mu) {
  if (!(mu > 0.0)) throw DomainError("select_model: mu must be > 0");
  if (mu < 0.1) return AdhesionModel::DMT;
  if (mu > 5.0) return AdhesionModel::JKR;
  return AdhesionModel::Transition;
}

double pull_off_force(const ContactSystem& sys) {
  sys.combined_modulus();
  return -1.5 * kPi * sys.interfacial_energy * sys.radius;
}

double interfacial_energy_from_pull_off(double pull_off, double radius) {
  if (!(radius > 0.0)) throw DomainError("radius must be > 0");
  return -pull_off / (1.5 * kPi * radius);
}

double jkr_discriminant(const ContactSystem& sys, double load) {
  const double w = 6.0 * kPi * sys.interfacial_energy * sys.radius;
  return w * (load - pull_off_force(sys));
}

double jkr_contact_radius(const ContactSystem& sys, double load) {
  const double K = sys.combined_modulus();
  const double disc = jkr_discriminant(sys, load);
  if (disc < 0.0) {
    throw NoContactError("load " + std::to_string(load) + " N is below the pull-off force " +
                         std::to_string(pull_off_force(sys)) + " N");
  }
  const double R = sys.radius;
  const double adhesion = 3.0 * kPi * sys.interfacial_energy * R;
  const double a3 = (R / K) * (load + adhesion + std::sqrt(disc));
  if (a3 < 0.0) {
    // Only reachable with γ = 0 and a tensile load.
    throw NoContactError("negative load without adhesion: no contact");
  }
  return std::cbrt(a3);
}

double jkr_central_displacement(const ContactSystem& sys, double load) {
  const double a = jkr_contact_radius(sys, load);
  const double K = sys.combined_modulus();
  return a * a / sys.radius - std::sqrt(2.0 * kPi * sys.interfacial_energy * a / K);
}

ContactReport analyze(const ContactSystem& sys) {
  ContactReport r{};
  r.combined_modulus = sys.combined_modulus();
  r.tabor = tabor_parameter(sys);
  r.model = r.tabor > 0.0 ? select_model(r.tabor) : AdhesionModel::DMT;
  r.contact_radius_zero_load = jkr_contact_radius(sys, 0.0);
  r.displacement_zero_load = jkr_central_displacement(sys, 0.0);
  r.pull_off = pull_off_force(sys);
  return r;
}

}  // namespace casimir::contact
