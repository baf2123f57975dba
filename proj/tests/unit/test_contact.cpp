#include <doctest.h>

#include "approx.hpp"

#include <cmath>

#include "casimir/contact.hpp"
#include "casimir/errors.hpp"
#include "oracles.hpp"

using namespace casimir;
using namespace casimir::contact;

namespace {

ContactSystem ps_silica() {
  ContactSystem s;
  s.first = {3e9, 0.33};
  s.second = {8e10, 0.42};
  s.radius = 200e-6;
  s.interfacial_energy = 0.05;
  s.equilibrium_separation = 3e-10;
  return s;
}

}  // namespace

TEST_CASE("combined modulus and Tabor parameter") {
  const auto s = ps_silica();
  const double K = 1.0 / ((1 - 0.33 * 0.33) / 3e9 + (1 - 0.42 * 0.42) / 8e10);
  CHECK(s.combined_modulus() == approx(K));
  CHECK(tabor_parameter(s) == approx(12.0).epsilon(0.01));

  // μ ∝ γ^(2/3): eightfold γ quadruples it
  auto s8 = s;
  s8.interfacial_energy *= 8.0;
  CHECK(tabor_parameter(s8) == approx(4.0 * tabor_parameter(s)));

  auto bad = s;
  bad.first.poisson_ratio = 0.6;
  CHECK_THROWS_AS(bad.combined_modulus(), DomainError);
  bad = s;
  bad.radius = 0.0;
  CHECK_THROWS_AS(tabor_parameter(bad), DomainError);
}

TEST_CASE("select_model") {
  CHECK(select_model(0.05) == AdhesionModel::DMT);
  CHECK(select_model(1.0) == AdhesionModel::Transition);
  CHECK(select_model(12.0) == AdhesionModel::JKR);
  CHECK(to_string(AdhesionModel::JKR) == "JKR");
}

TEST_CASE("JKR contact radius") {
  const auto s = ps_silica();
  const double K = s.combined_modulus();
  const double a0 = jkr_contact_radius(s, 0.0);
  CHECK(a0 == approx(2.26e-6).epsilon(0.005));
  for (double F : {-4e-5, 0.0, 1e-5, 1e-3}) {
    CHECK(jkr_contact_radius(s, F) ==
          approx(oracle::jkr_radius_bisect(K, s.radius, s.interfacial_energy, F)).epsilon(1e-6));
  }

  // Hertz limit
  auto hertz = s;
  hertz.interfacial_energy = 0.0;
  const double F = 1e-3;
  CHECK(jkr_contact_radius(hertz, F) == approx(std::cbrt(s.radius * F / K)).epsilon(1e-12));

  // pull-off: discriminant vanishes, contact radius still finite
  const double fa = pull_off_force(s);
  CHECK(fa == approx(-1.5 * oracle::pi * 0.05 * 200e-6));
  CHECK(jkr_discriminant(s, fa) == 0.0);
  CHECK(std::isfinite(jkr_contact_radius(s, fa)));
  CHECK_THROWS_AS(jkr_contact_radius(s, fa * 1.01), NoContactError);

  double prev = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double load = fa + i * (4e-4 - fa) / 50.0;
    const double a = jkr_contact_radius(s, load);
    CHECK(a >= prev);
    prev = a;
  }
}

TEST_CASE("displacement and pull-off round trip") {
  const auto s = ps_silica();
  const double a = jkr_contact_radius(s, 0.0);
  const double d = jkr_central_displacement(s, 0.0);
  CHECK(d == approx(a * a / s.radius - std::sqrt(2 * oracle::pi * 0.05 * a / s.combined_modulus())));
  for (double g : {0.01, 0.05, 1.3}) {
    CHECK(interfacial_energy_from_pull_off(pull_off_force({s.first, s.second, 1e-2, g}), 1e-2) ==
          approx(g));
  }
}

TEST_CASE("gold on gold: zero-load indentation of a few nanometres") {
  ContactSystem s;
  s.first = {7.8e10, 0.42};
  s.second = s.first;
  s.radius = 10e-3;
  s.interfacial_energy = 0.05;
  const auto r = analyze(s);
  CHECK(r.model == AdhesionModel::JKR);
  CHECK(std::abs(r.displacement_zero_load) == approx(7e-9).epsilon(0.3));
}
