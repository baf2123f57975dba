#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "casimir/analysis.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"

using namespace casimir;

namespace {

constexpr double kWp = 1.4e16;
constexpr double kGamma = 5.3e13;

double drude_loss(double w) { return kWp * kWp * kGamma / (w * (w * w + kGamma * kGamma)); }

lifshitz::LayerStack gold_hc() {
  return lifshitz::LayerStack::single_coating(dielectric::Drude{kWp, kGamma},
                                              dielectric::make_oscillator(1.5, 3e15, 1), 2.1e-9);
}

void BM_KkTransform(benchmark::State& state) {
  dielectric::KkOptions opt;
  opt.points_per_decade = static_cast<int>(state.range(0));
  opt.low_tail = dielectric::DrudeParams{kWp, kGamma};
  for (auto _ : state) benchmark::DoNotOptimize(dielectric::kk_transform(drude_loss, 1e15, opt));
}
BENCHMARK(BM_KkTransform)->Arg(200)->Arg(800);

void BM_FreeEnergy(benchmark::State& state) {
  const auto stack = gold_hc();
  lifshitz::MatsubaraContext ctx;
  const double d = state.range(0) * 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(lifshitz::free_energy_per_area(stack, d, ctx));
}
BENCHMARK(BM_FreeEnergy)->Arg(10)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_EnergyCurve(benchmark::State& state) {
  const auto stack = gold_hc();
  lifshitz::MatsubaraContext ctx;
  std::vector<double> seps;
  for (int i = 0; i < 60; ++i) seps.push_back(10e-9 * std::pow(30.0, i / 59.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lifshitz::energy_curve(stack, seps, ctx, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_EnergyCurve)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const auto model = [](double d) { return -3e-5 * std::pow(20e-9 / d, 2.5); };
  analysis::SynthesisOptions so;
  const auto curve = analysis::synthesize_measurement(model, so);
  for (auto _ : state) benchmark::DoNotOptimize(analysis::fit_curve(curve, model, 20e-9, 100e-9));
}
BENCHMARK(BM_Fit)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
