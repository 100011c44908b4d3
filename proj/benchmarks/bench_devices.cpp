#include <benchmark/benchmark.h>

#include "pfab/devices.hpp"

using namespace pfab;

static void BM_TransferSweep(benchmark::State& state) {
  AddDropResonator r;
  r.self_coupling_in = 0.9;
  r.self_coupling_drop = 0.9;
  r.round_trip_amplitude = 0.98;
  const double fsr_lam = fsr(r, 1550e-9).fsr_wavelength;
  for (auto _ : state) {
    double acc = 0.0;
    for (int k = 0; k < 1000; ++k) {
      TransferPoint tp = transfer(r, 1550e-9 + fsr_lam * k / 1000.0);
      acc += tp.drop_power;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_TransferSweep);

static void BM_CalibrateSwitch(benchmark::State& state) {
  SwitchLossModel targets;
  for (auto _ : state) {
    AddDropResonator r = calibrate_switch(targets, 100e9);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_CalibrateSwitch);
