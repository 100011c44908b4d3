#ifndef PFAB_TRAFFIC_HPP
#define PFAB_TRAFFIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pfab/allocator.hpp"
#include "pfab/devices.hpp"
#include "pfab/topology.hpp"

namespace pfab {

struct TrafficRequest {
  std::int64_t arrival_slot = 0;
  std::string src;
  std::string dst;
  std::int64_t size_bits = 0;
  bool operator==(const TrafficRequest&) const = default;
};

struct WorkloadParams {
  std::uint64_t seed = 1;
  double rate = 0.5;             // mean requests per busy slot
  double nearby_fraction = 0.5;  // share of same-tile XPU->HBM transfers
  double xpu_duty = 0.7;         // busy fraction, within [0.5, 0.9]
  std::int64_t slots = 10000;
  std::int64_t size_bits = 4194304;

  void validate() const;
  bool operator==(const WorkloadParams&) const = default;
};

struct Workload {
  WorkloadParams params;
  std::vector<TrafficRequest> requests;  // nondecreasing arrival slots
  bool operator==(const Workload&) const = default;
};

// Deterministic for a fixed seed: arrivals use a counter-based generator
// keyed on (seed, slot), so workloads with a common seed pair slot-by-slot
// across duty or rate changes.
Workload generate(const PanelTopology& panel, const WorkloadParams& params);

struct SimConfig {
  double slot_seconds = 1e-6;
  double link_rate_gbps = 32.0;  // per lambda
  SwitchLossModel loss_model;
  double fixed_loss_db = 3.0;
  Photodetector pd;
  double carrier_power_per_lambda_w = 0.5e-3;
  bool drop_blocked = false;  // otherwise blocked requests queue
  bool random_order = false;  // otherwise FIFO with head-of-line blocking
  int reconfig_slots = 0;
  int max_turns = 2;

  bool operator==(const SimConfig&) const = default;
};

struct SimReport {
  std::int64_t slots_run = 0;
  std::int64_t offered_bits = 0;
  std::int64_t bits_delivered = 0;
  std::int64_t requests_arrived = 0;
  std::int64_t requests_granted = 0;
  std::int64_t requests_blocked = 0;  // waited at least one slot or dropped
  std::int64_t requests_dropped = 0;
  double blocking_probability = 0.0;
  double mean_wait_slots = 0.0;
  double mean_path_loss_db = 0.0;
  int peak_concurrent_routes = 0;
  double carrier_energy_ws = 0.0;  // carrier power integrated over slots
  std::int64_t max_route_bits_per_slot = 0;
  int reconfig_slots = 0;

  bool operator==(const SimReport&) const = default;
};

SimReport run(const PanelTopology& panel, const Workload& workload, const SimConfig& cfg = {});

struct SweepGrid {
  std::vector<double> xpu_duty;
  std::vector<double> rate;
  std::vector<int> wg_per_bundle;
  bool operator==(const SweepGrid&) const = default;
};

struct SweepRow {
  double xpu_duty = 0.0;
  double rate = 0.0;
  int wg_per_bundle = 0;
  std::uint64_t seed = 0;
  SimReport report;
};

// One row per grid point, in declared grid order. Workload seeds advance per
// (duty, rate) combination; the wg dimension reuses the same workload so
// fabric-width effects are measured on paired traffic.
std::vector<SweepRow> sweep(const PanelSpec& base, const WorkloadParams& workload,
                            const SimConfig& cfg, const SweepGrid& grid);

}  // namespace pfab

#endif
