#ifndef PFAB_CONFIG_HPP
#define PFAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfab/budget.hpp"
#include "pfab/devices.hpp"
#include "pfab/topology.hpp"
#include "pfab/traffic.hpp"
#include "pfab/xbar.hpp"

namespace pfab {

struct RoutePlanningConfig {
  double fixed_loss_db = 3.0;
  int max_turns = 2;
  double wg_db_per_cm = 0.0;  // distance-dependent extension, off by default
  double tile_pitch_col_mm = 62.0;
  double tile_pitch_row_mm = 57.0;
  bool operator==(const RoutePlanningConfig&) const = default;
};

struct SimSettings {
  double slot_seconds = 1e-6;
  double link_rate_gbps = 32.0;
  bool drop_blocked = false;
  bool random_order = false;
  int reconfig_slots = 0;
  bool operator==(const SimSettings&) const = default;
};

struct BudgetConfig {
  std::optional<std::vector<LinkClass>> classes;
  double carrier_power_w = 0.0;
  double max_reach_mm = 0.0;
  bool reach_is_lower_bound = false;
  bool operator==(const BudgetConfig&) const = default;
};

struct AllocateRequestConfig {
  std::string from;
  std::string to;
  std::int64_t slot = 0;
  std::optional<int> force_turns;
  int wg_index = 0;
  bool operator==(const AllocateRequestConfig&) const = default;
};

struct AllocateConfig {
  std::vector<AllocateRequestConfig> requests;
  std::int64_t hold_slots = 0;  // 0: hold until the trace ends
  bool operator==(const AllocateConfig&) const = default;
};

// Comb-grid settings in config units (nm, mW). Stored verbatim so a
// parse-dump-parse round trip is bit-lossless; conversion to meters/watts
// happens once at point of use.
struct CarrierGridConfig {
  int carrier_count = 32;
  double spacing_nm = 0.8;
  double center_wavelength_nm = 1550.0;
  double power_per_carrier_mw = 0.5;
  bool operator==(const CarrierGridConfig&) const = default;
};

enum class RenderFormat { Table, Json, Csv };

RenderFormat render_format_from_string(const std::string& s);
std::string to_string(RenderFormat f);

// One validated configuration drives a whole run; flags may override single
// fields afterwards. Unknown keys and out-of-range values are rejected with
// the JSON path of the offender.
struct RunConfig {
  PanelSpec panel;
  SwitchLossModel loss_model;
  RoutePlanningConfig route;
  SrnMaterial material;
  Photodetector photodetector;
  CarrierGridConfig carrier_grid;
  WorkloadParams workload;
  SimSettings sim;
  SweepGrid sweep;
  BudgetConfig budget;
  AllocateConfig allocate;
  RenderFormat output_format = RenderFormat::Table;
  std::optional<std::uint64_t> seed;  // overrides workload.seed when present

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string dump_config(const RunConfig& config);

// Workload parameters with the top-level seed override applied.
WorkloadParams effective_workload(const RunConfig& config);

SimConfig make_sim_config(const RunConfig& config);

WdmCarrierGrid make_carrier_grid(const RunConfig& config);

}  // namespace pfab

#endif
