#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pfab/allocator.hpp"

using namespace pfab;

namespace {

std::vector<Route> route_pool(const PanelTopology& panel, int count, int lanes) {
  std::mt19937 rng(7);
  std::vector<Route> pool;
  const int rows = panel.rows(), cols = panel.cols();
  while (static_cast<int>(pool.size()) < count) {
    const int r1 = static_cast<int>(rng() % rows), c1 = static_cast<int>(rng() % cols);
    int r2 = static_cast<int>(rng() % rows), c2 = static_cast<int>(rng() % cols);
    if (r1 == r2 && c1 == c2) c2 = (c2 + 1) % cols;
    PlanOptions opts;
    opts.wg_index = static_cast<int>(rng() % lanes);
    pool.push_back(plan(panel,
                        "XPU_" + std::to_string(r1) + "_" + std::to_string(c1),
                        "XPU_" + std::to_string(r2) + "_" + std::to_string(c2), opts));
  }
  return pool;
}

}  // namespace

static void BM_AllocateReleaseChurn(benchmark::State& state) {
  PanelSpec spec;
  spec.rows = 8;
  spec.cols = 8;
  spec.wg_per_bundle = 4;
  PanelTopology panel = PanelTopology::build(spec);
  auto pool = route_pool(panel, 64, 4);

  SlotAllocation alloc(&panel, 0);
  std::vector<Route> live;
  std::mt19937 rng(13);
  for (auto _ : state) {
    if (live.empty() || rng() % 2 == 0) {
      const Route& r = pool[rng() % pool.size()];
      if (alloc.try_add(r).empty()) live.push_back(r);
    } else {
      const size_t pick = rng() % live.size();
      alloc.remove(live[pick]);
      live.erase(live.begin() + static_cast<long>(pick));
    }
  }
}
BENCHMARK(BM_AllocateReleaseChurn);

static void BM_MaxConcurrentExact(benchmark::State& state) {
  PanelTopology panel = PanelTopology::build(4, 4);
  auto pool = route_pool(panel, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    auto res = max_concurrent(panel, pool);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_MaxConcurrentExact)->Arg(12)->Arg(16)->Arg(20);
