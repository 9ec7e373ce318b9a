// solab: microbenchmarks for the hot paths — curvature evaluation, soliton
// construction/validation, flow integration, functionals, reduced distance.
#include <benchmark/benchmark.h>

#include <sstream>

#include "solab/convergence_analyzer.hpp"
#include "solab/flow_engine.hpp"
#include "solab/monotonicity_lab.hpp"
#include "solab/radial_geometry.hpp"
#include "solab/soliton_forge.hpp"

using namespace solab;

static const SolitonPtr& gaussian() {
  static SolitonPtr s = builtin_soliton("gaussian", {});
  return s;
}

static const SolitonPtr& cap() {
  static SolitonPtr s = builtin_soliton("cap_projected", {});
  return s;
}

static const SolitonPtr& flat() {
  static SolitonPtr s = builtin_soliton("flat", {});
  return s;
}

static void CurvatureEval(benchmark::State& state) {
  const auto& metric = gaussian()->metric;
  const auto& w = gaussian()->w;
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curvature_sample(metric, w, r));
    r = r < 9.9 ? r + 0.1 : 0.1;
  }
}
BENCHMARK(CurvatureEval);

static void ResidualSweep(benchmark::State& state) {
  const auto& s = *gaussian();
  for (auto _ : state) {
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
      double r = 0.1 + k * (10.0 - 0.1) / 499.0;
      auto rv = soliton_residuals(s, r);
      worst = std::max({worst, rv.diag, rv.offdiag, rv.w_eq, rv.hamilton});
    }
    benchmark::DoNotOptimize(worst);
  }
}
BENCHMARK(ResidualSweep);

static void BuildCapSoliton(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(builtin_soliton("cap_projected", {}));
  }
}
BENCHMARK(BuildCapSoliton);

static void NormalizedFlowToExtinction(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_normalized_flow(gaussian(), 1.5, 5.0));
  }
}
BENCHMARK(NormalizedFlowToExtinction);

static void WeightedAreaEval(benchmark::State& state) {
  const auto& s = *gaussian();
  double rho = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_area(s, rho));
    rho = rho < 3.0 ? rho + 0.25 : 0.5;
  }
}
BENCHMARK(WeightedAreaEval);

static void ReducedDistanceFlat(benchmark::State& state) {
  const auto m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_distance(flat(), 0.5, 0.0, 1.5, 0.5, m));
  }
}
BENCHMARK(ReducedDistanceFlat)->Arg(16)->Arg(33)->Arg(64);

static void ReducedDistanceGaussian(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reduced_distance(gaussian(), 0.5, 0.0, 1.5, 0.5, 33));
  }
}
BENCHMARK(ReducedDistanceGaussian);

static void ExportImportRoundTrip(benchmark::State& state) {
  const auto& s = *cap();
  for (auto _ : state) {
    std::stringstream ss;
    export_soliton(s, ss, 257);
    benchmark::DoNotOptimize(import_soliton(ss));
  }
}
BENCHMARK(ExportImportRoundTrip);

BENCHMARK_MAIN();
