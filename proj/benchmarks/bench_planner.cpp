#include <benchmark/benchmark.h>

#include "pfab/planner.hpp"

using namespace pfab;

static void BM_PlanCornerToCorner(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PanelTopology panel = PanelTopology::build(n, n);
  const std::string src = "XPU_0_0";
  const std::string dst = "XPU_" + std::to_string(n - 1) + "_" + std::to_string(n - 1);
  for (auto _ : state) {
    Route r = plan(panel, src, dst);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_PlanCornerToCorner)->Arg(8)->Arg(16)->Arg(20);

static void BM_EnumerateRoutes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PanelTopology panel = PanelTopology::build(n, n);
  const std::string src = "XPU_0_0";
  const std::string dst = "XPU_" + std::to_string(n - 1) + "_" + std::to_string(n - 1);
  for (auto _ : state) {
    auto all = enumerate_routes(panel, src, dst);
    benchmark::DoNotOptimize(all);
  }
}
BENCHMARK(BM_EnumerateRoutes)->Arg(8)->Arg(20);

static void BM_LossBudget(benchmark::State& state) {
  PanelTopology panel = PanelTopology::build(8, 8);
  PlanOptions opts;
  opts.force_turns = 2;
  Route r = plan(panel, "XPU_0_0", "XPU_7_7", opts);
  for (auto _ : state) {
    LossBudget b = loss_budget(r);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_LossBudget);
