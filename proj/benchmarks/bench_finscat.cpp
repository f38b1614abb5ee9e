#include <benchmark/benchmark.h>

#include <numbers>

#include "finscat/finscat.hpp"

namespace {

using namespace finscat;

void BM_BesselPoly(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_poly(l, Complex(0.0, 0.1)));
}
BENCHMARK(BM_BesselPoly)->Arg(2)->Arg(20)->Arg(60);

void BM_SphBesselJ(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sph_bessel_j(l, 3.7));
}
BENCHMARK(BM_SphBesselJ)->Arg(2)->Arg(20)->Arg(60);

void BM_AmplitudeFinite(benchmark::State& state) {
  const auto p = hard_sphere_phases(1.0, static_cast<double>(state.range(0)), 3 * static_cast<int>(state.range(0)) + 10);
  for (auto _ : state) benchmark::DoNotOptimize(amplitude_finite(p, 1e3, 1.0));
}
BENCHMARK(BM_AmplitudeFinite)->Arg(1)->Arg(10);

void BM_NumerovPhases(benchmark::State& state) {
  const auto v = PotentialSpec::square_well(4.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(numerov_phases(v, 1.0, static_cast<int>(state.range(0)), 1.5, 1e-3));
}
BENCHMARK(BM_NumerovPhases)->Arg(4)->Arg(20);

void BM_TraceGeneratrix(benchmark::State& state) {
  const auto p = hard_sphere_phases(1.0, 1.0, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        trace_generatrix(p, 1e3, std::numbers::pi - 0.1, std::numbers::pi / 500, FluxConvention::scattered_only));
  }
}
BENCHMARK(BM_TraceGeneratrix);

}  // namespace

BENCHMARK_MAIN();
