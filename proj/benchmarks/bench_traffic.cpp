#include <benchmark/benchmark.h>

#include "pfab/traffic.hpp"

using namespace pfab;

static void BM_SimulateSlots(benchmark::State& state) {
  PanelSpec spec;
  spec.rows = 4;
  spec.cols = 4;
  spec.wg_per_bundle = 8;
  PanelTopology panel = PanelTopology::build(spec);

  WorkloadParams p;
  p.seed = 1;
  p.rate = 2.0;
  p.slots = state.range(0);
  Workload wl = generate(panel, p);

  for (auto _ : state) {
    SimReport rep = run(panel, wl);
    benchmark::DoNotOptimize(rep);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSlots)->Arg(1000)->Arg(10000);

static void BM_GenerateWorkload(benchmark::State& state) {
  PanelTopology panel = PanelTopology::build(4, 4);
  WorkloadParams p;
  p.rate = 2.0;
  p.slots = 10000;
  for (auto _ : state) {
    Workload wl = generate(panel, p);
    benchmark::DoNotOptimize(wl);
  }
}
BENCHMARK(BM_GenerateWorkload);
