#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/lifshitz.hpp"
#include "oracles.hpp"

using namespace casimir;
using namespace casimir::lifshitz;
namespace die = casimir::dielectric;

namespace {

constexpr double kZeta3 = 1.2020569031595942;

LayerStack pec() {
  LayerStack s;
  s.metal = die::Constant{1e8};
  return s;
}

LayerStack gold_hc(double a = 2.1e-9) {
  return LayerStack::single_coating(die::Drude{1.4e16, 5.3e13}, die::make_oscillator(1.5, 3e15, 1), a);
}

}  // namespace

TEST_CASE("fresnel_deltas") {
  auto r = fresnel_deltas(2.0, 2.0, 3.0);
  CHECK(r.tm == 0.0);
  CHECK(r.te == 0.0);

  r = fresnel_deltas(1.0, 2.25, 1.0);
  CHECK(r.tm == approx(-0.2));
  CHECK(r.te == approx(0.2));

  for (double p : {1.0, 3.0}) {
    r = fresnel_deltas(1.0, 1e8, p);
    CHECK(std::abs(r.tm) == approx(1.0).epsilon(1e-3));
    CHECK(std::abs(r.te) == approx(1.0).epsilon(1e-3));
    CHECK(std::abs(r.tm) < 1.0);
    CHECK(std::abs(r.te) < 1.0);
  }
  CHECK_THROWS_AS(fresnel_deltas(1.0, 2.0, 0.5), DomainError);
  CHECK_THROWS_AS(fresnel_deltas(0.5, 2.0, 1.5), DomainError);
}

TEST_CASE("composite_delta_31") {
  const die::DielectricModel e1 = die::Drude{1.4e16, 5.3e13};
  const double xi = 2e15;
  const double eps1 = die::evaluate(e1, xi);
  const double eps2 = 2.25;
  for (double p : {1.0, 1.7, 12.0}) {
    // a = 0: the coating disappears
    auto s0 = LayerStack::single_coating(e1, die::Constant{eps2}, 0.0);
    auto c0 = composite_delta_31(s0, xi, p);
    auto f0 = fresnel_deltas(1.0, eps1, p);
    CHECK(c0.tm == approx(f0.tm).epsilon(1e-12));
    CHECK(c0.te == approx(f0.te).epsilon(1e-12));

    // thick coating: only the gap/coating interface is seen
    auto sinf = LayerStack::single_coating(e1, die::Constant{eps2}, 1e-3);
    auto ci = composite_delta_31(sinf, xi, p);
    auto fi = fresnel_deltas(1.0, eps2, p);
    CHECK(ci.tm == approx(fi.tm).epsilon(1e-12));
    CHECK(ci.te == approx(fi.te).epsilon(1e-12));

    // coating identical to the gap: a plain interface pushed back by a
    const double a = 3e-9;
    auto sv = LayerStack::single_coating(e1, die::Vacuum{}, a);
    auto cv = composite_delta_31(sv, xi, p);
    const double att = std::exp(-2.0 * xi * a * p / oracle::c);
    CHECK(cv.tm == approx(f0.tm * att).epsilon(1e-10));
    CHECK(cv.te == approx(f0.te * att).epsilon(1e-10));
  }
}

TEST_CASE("integrand_I") {
  LayerStack same;
  same.metal = die::Constant{2.0};
  same.gap = die::Constant{2.0};
  CHECK(integrand_I(same, 1e15, 50e-9) == 0.0);

  // perfect-conductor surrogate against brute-force Simpson in p
  const auto s = pec();
  for (double x : {0.05, 0.5, 3.0, 20.0}) {
    const double d = 100e-9;
    const double xi = x * oracle::c / (2.0 * d);
    const double ref = oracle::bare_integrand_I(1e8, xi, d);
    INFO("2 xi d / c = ", x);
    CHECK(integrand_I(s, xi, d) == approx(ref).epsilon(1e-3));
  }

  // a finite-ε half-space as well
  LayerStack glass;
  glass.metal = die::Constant{2.25};
  CHECK(integrand_I(glass, 3e15, 40e-9) ==
        approx(oracle::bare_integrand_I(2.25, 3e15, 40e-9)).epsilon(1e-3));

  // attractive everywhere; exponentially small once 2ξd/c >> 1
  const auto g = gold_hc(0.0);
  for (double d = 5e-9; d < 500e-9; d *= 1.3) CHECK(integrand_I(g, 1e15, d) < 0.0);
  CHECK(std::abs(integrand_I(g, 1e15, 3e-6)) < 1e-3 * std::abs(integrand_I(g, 1e15, 20e-9)));
}

TEST_CASE("free_energy_per_area: trivial and ideal limits") {
  MatsubaraContext ctx;
  LayerStack vac;
  CHECK(free_energy_per_area(vac, 50e-9, ctx).energy_per_area == 0.0);

  // at 298 K the ε = 1e8 surrogate lacks the TE zero-frequency mode; the
  // ideal energy plus that missing term is the oracle
  for (double d : {50e-9, 100e-9, 200e-9}) {
    const double ideal = geometry::casimir_energy_plates(d);
    const double te0 = oracle::kB * 298.0 * kZeta3 / (16.0 * oracle::pi * d * d);
    const double got = free_energy_per_area(pec(), d, ctx).energy_per_area;
    INFO("d = ", d);
    CHECK(got == approx(ideal + te0).epsilon(5e-3));
  }

  // near zero temperature the ideal formula itself is reached
  MatsubaraContext cold;
  cold.temperature = 10.0;
  const double e100 = free_energy_per_area(pec(), 100e-9, cold).energy_per_area;
  CHECK(e100 == approx(geometry::casimir_energy_plates(100e-9)).epsilon(0.02));

  // D^-3 scaling over 50-200 nm
  const double ref = e100 * std::pow(100e-9, 3);
  for (double d : {50e-9, 70e-9, 140e-9, 200e-9}) {
    const double v = free_energy_per_area(pec(), d, cold).energy_per_area * d * d * d;
    CHECK(v == approx(ref).epsilon(0.02));
  }
}

TEST_CASE("free_energy_per_area: gold-hydrocarbon stack") {
  MatsubaraContext ctx;
  const auto s = gold_hc();
  const double f20 = free_energy_per_area(s, 20e-9, ctx).energy_per_area;
  const double f40 = free_energy_per_area(s, 40e-9, ctx).energy_per_area;
  CHECK(f20 / f40 > 4.0);
  CHECK(f20 / f40 < 8.0);

  for (double d = 10e-9; d <= 1e-6; d *= 1.25) {
    const double e = free_energy_per_area(s, d, ctx).energy_per_area;
    CHECK(std::isfinite(e));
    CHECK(e < 0.0);
  }

  // across the same gap bare gold attracts more than the coated stack; at the
  // same gold-gold distance the extra hydrocarbon adds attraction instead
  const auto bare = gold_hc(0.0);
  for (double d : {10e-9, 30e-9, 100e-9}) {
    const double coated = free_energy_per_area(s, d, ctx).energy_per_area;
    CHECK(free_energy_per_area(bare, d, ctx).energy_per_area < coated);
    CHECK(free_energy_per_area(bare, d + 4.2e-9, ctx).energy_per_area > coated);
  }
}

TEST_CASE("Matsubara bookkeeping") {
  MatsubaraContext ctx;
  const auto s = gold_hc();
  const double d = 30e-9;
  const auto full = free_energy_per_area(s, d, ctx);
  const double pref = oracle::kB * ctx.temperature / (8.0 * oracle::pi * d * d);
  const double i0 = zero_frequency_I(s, d);
  double rest = 0.0;
  for (std::size_t n = 1; n < full.terms; ++n) rest += integrand_I(s, ctx.frequency(n), d);
  const double half = pref * (0.5 * i0 + rest);
  const double with_full = pref * (i0 + rest);
  const double without = pref * rest;
  CHECK(half == approx(0.5 * (with_full + without)).epsilon(1e-14));
  CHECK(full.energy_per_area == approx(half).epsilon(1e-4));

  CHECK(ctx.frequency(1) == approx(2.0 * oracle::pi * oracle::kB * 298.0 / oracle::hbar));

  // tightening the tolerance moves the answer by less than the old tolerance
  MatsubaraContext tight = ctx;
  tight.rel_tol = ctx.rel_tol / 2.0;
  for (double dd : {10e-9, 50e-9, 300e-9}) {
    const double a = free_energy_per_area(s, dd, ctx).energy_per_area;
    const double b = free_energy_per_area(s, dd, tight).energy_per_area;
    CHECK(std::abs(a - b) < ctx.rel_tol * std::abs(b));
  }

  MatsubaraContext starved = ctx;
  starved.max_terms = 8;
  CHECK_THROWS_AS(free_energy_per_area(s, 5e-9, starved), AccuracyError);
  CHECK_THROWS_AS(free_energy_per_area(s, 0.0, ctx), DomainError);
}

TEST_CASE("energy_curve and normalized_force_curve") {
  MatsubaraContext ctx;
  const auto s = gold_hc();
  std::vector<double> seps;
  for (double d = 10e-9; d < 300e-9; d *= 1.2) seps.push_back(d);
  const auto one = energy_curve(s, seps, ctx, 1);
  const auto many = energy_curve(s, seps, ctx, 4);
  CHECK(one.energy_per_area == many.energy_per_area);  // bitwise
  CHECK(one.terms == many.terms);
  for (std::size_t i = 1; i < seps.size(); ++i) CHECK(one.energy_per_area[i] > one.energy_per_area[i - 1]);

  const auto fc = normalized_force_curve(s, seps, 10e-3, ctx, 2);
  const auto fc2 = normalized_force_curve(s, seps, 20e-3, ctx, 2);
  for (std::size_t i = 0; i < seps.size(); ++i) {
    CHECK(fc.points[i].force == one.energy_per_area[i]);
    CHECK(fc2.points[i].force == fc.points[i].force);
  }
  CHECK(fc.radius == 10e-3);

  const std::vector<double> unsorted = {20e-9, 10e-9};
  CHECK_THROWS(energy_curve(s, unsorted, ctx));
}

TEST_CASE("perfect conductors: F/2piR at 100 nm") {
  MatsubaraContext cold;
  cold.temperature = 10.0;
  const std::vector<double> d = {100e-9};
  const auto fc = normalized_force_curve(pec(), d, 1e-2, cold, 1);
  CHECK(fc.points[0].force * 1e6 == approx(-0.4334).epsilon(0.02));
}
