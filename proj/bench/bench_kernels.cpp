// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "catalogue.hpp"
#include "variety_catalogue.hpp"

using namespace expdiff;
using namespace expdiff::testing;

namespace {

Exec policy(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

// The largest random configurations give 2^6 substructures.
void BM_PregeometryTable(benchmark::State& state) {
  std::vector<Config> configs;
  for (unsigned seed = 0; seed < 40; ++seed) configs.push_back(random_config(seed));
  for (auto _ : state)
    for (const auto& c : configs) benchmark::DoNotOptimize(Pregeometry(c, policy(state)).delta(0));
  label(state);
}

void BM_RotundSweep(benchmark::State& state) {
  auto f = field({"t"}, {{"1"}});
  auto h = equations_variety(f, 2, {"x1*x2 - y1 - y2"});
  for (auto _ : state) benchmark::DoNotOptimize(is_rotund(h, 3, RotundMode::Strong, policy(state)).maps_checked);
  label(state);
}

void BM_FreenessSweep(benchmark::State& state) {
  auto f = field({"t"}, {{"1"}});
  auto v = equations_variety(f, 2, {"x1*x2 - y1 - y2"});
  for (auto _ : state) benchmark::DoNotOptimize(is_free(v, 3, true, policy(state)).free);
  label(state);
}

// Points (p t, 2 q t) with torus parts (u^p, v^q) over Du = u, Dv = 2v,
// grouped by p.
void BM_UspBatch(benchmark::State& state) {
  auto f = field({"t", "u", "v"}, {{"1", "u", "2*v"}});
  std::vector<UspItem> batch;
  for (int p = 1; p <= 6; ++p)
    for (int q = 1; q <= 6; ++q) {
      auto ps = std::to_string(p), qs = std::to_string(q);
      batch.push_back({"p" + ps, point(f, {ps + "*t", "2*" + qs + "*t"}, {"u^" + ps, "v^" + qs})});
    }
  for (auto _ : state) benchmark::DoNotOptimize(usp_collect(f, batch, policy(state)).witnesses.size());
  label(state);
}

}  // namespace

BENCHMARK(BM_PregeometryTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RotundSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FreenessSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UspBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
