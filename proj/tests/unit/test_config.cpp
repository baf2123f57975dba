#include <doctest.h>

#include "approx.hpp"

#include <string>

#include "casimir/config.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(CASIMIR_DATA_DIR) / "configs";

std::string message_of(const std::string& text) {
  try {
    config::parse(text, ".", "inline");
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("shipped configs load") {
  const auto gold = config::load(kConfigs / "gold_hc_air.json");
  CHECK(gold.effective_radius() == approx(10e-3));
  CHECK(gold.roughness.amplitude == approx(3.65e-9));
  CHECK(gold.analysis.fit_lo == approx(20e-9));
  CHECK(gold.analysis.fit_hi == approx(100e-9));
  CHECK(gold.hash.size() == 16);
  const auto s = gold.layer_stack();
  CHECK(s.coatings.size() == 1);
  CHECK(s.coatings[0].thickness == approx(2.1e-9));
  CHECK(dielectric::evaluate(s.metal, 1e14) == approx(1.26e4).epsilon(0.05));

  const auto pec = config::load(kConfigs / "perfect_conductor.json");
  CHECK(dielectric::evaluate(pec.layer_stack().metal, 1e15) == 1e8);
  CHECK(pec.lifshitz.matsubara.temperature == 298.0);

  const auto ps = config::load(kConfigs / "polystyrene_silica.json");
  REQUIRE(ps.contact);
  CHECK(ps.contact->radius == approx(200e-6));

  CHECK_NOTHROW(config::load(kConfigs / "gold_contact.json"));
  const auto w = config::load(kConfigs / "water.json");
  CHECK(dielectric::evaluate(w.layer_stack().gap, 0.0) == approx(80.0).epsilon(0.03));
}

TEST_CASE("malformed input names the problem") {
  CHECK(message_of("{ \"materials\": ") != "");
  const auto unknown = message_of(R"({"geometry": {"kind": "sphere_flat", "radius": "1 mm", "radios": 2}})");
  CHECK(unknown.find("geometry.radios") != std::string::npos);
  const auto unit = message_of(R"({"temperature": "298 furlongs"})");
  CHECK(unit.find("temperature") != std::string::npos);
  CHECK_THROWS_AS(config::parse(R"({"bogus": 1})", ".", "inline"), ConfigError);
  CHECK_THROWS_AS(config::load("/nonexistent/nowhere.json"), UsageError);

  const auto c = config::parse(R"({"stack": {"metal": "unobtainium"}})", ".", "inline");
  CHECK_THROWS_AS(c.layer_stack(), UsageError);
}
