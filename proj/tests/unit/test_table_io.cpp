#include <doctest.h>

#include "approx.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/force_curve.hpp"
#include "casimir/table_io.hpp"

using namespace casimir;
namespace fs = std::filesystem;

TEST_CASE("split_fields") {
  CHECK(io::split_fields("1,2,3").size() == 3);
  CHECK(io::split_fields("1;2;3").size() == 3);
  CHECK(io::split_fields("1\t2 \t 3").size() == 3);
  CHECK(io::split_fields("  1   2  ").size() == 2);
}

TEST_CASE("numeric tables with metadata round-trip") {
  io::Metadata m;
  m.add("config_hash", "abc");
  std::ostringstream out;
  io::write_table(out, m, {"a", "b"}, {{1.0, 2.5}, {-3e-9, 4e20}});
  std::istringstream in(out.str());
  const auto t = io::read_numeric_table(in, "mem");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][0] == approx(-3e-9));
  CHECK(t.metadata.entries.at(0).second == "abc");
  CHECK(t.column("b") == 1);
  CHECK_THROWS_AS(t.column("c"), DataQualityError);

  std::istringstream bad("a,b\n1,x\n");
  CHECK_THROWS_AS(io::read_numeric_table(bad, "mem"), DataQualityError);
}

TEST_CASE("format_number is fixed and locale independent") {
  CHECK(io::format_number(1.0) == "1.0000000000e+00");
  CHECK(io::format_number(-2.5e-9) == "-2.5000000000e-09");
}

TEST_CASE("force curve files") {
  const auto dir = fs::temp_directory_path() / "casimir_table_io_test";
  fs::create_directories(dir);
  ForceCurve c;
  c.radius = 1e-2;
  c.temperature = 300.0;
  c.noise_floor = 2e-7;
  c.jump_in = 19.5e-9;
  c.points = {{20e-9, -5e-6}, {21e-9, -4.5e-6}};
  c.save(dir / "c.csv");
  CHECK_FALSE(fs::exists(dir / "c.csv.partial"));
  const auto back = ForceCurve::load(dir / "c.csv");
  CHECK(back.radius == approx(1e-2));
  CHECK(back.temperature == approx(300.0));
  CHECK(back.noise_floor == approx(2e-7));
  REQUIRE(back.jump_in.has_value());
  CHECK(*back.jump_in == approx(19.5e-9));
  CHECK(back.points[1].force == approx(-4.5e-6));
  CHECK(back.interpolate(20.5e-9) == approx(-4.75e-6));
  CHECK_THROWS_AS(back.interpolate(25e-9), DomainError);
  CHECK_THROWS_AS(ForceCurve::load(dir / "missing.csv"), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("fnv1a64 is stable") {
  CHECK(io::to_hex(io::fnv1a64("")) == "cbf29ce484222325");
  CHECK(io::to_hex(io::fnv1a64("a")) == "af63dc4c8601ec8c");
}
