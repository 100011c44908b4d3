#ifndef PFAB_RENDER_HPP
#define PFAB_RENDER_HPP

#include <string>
#include <vector>

#include "pfab/budget.hpp"
#include "pfab/config.hpp"
#include "pfab/planner.hpp"
#include "pfab/traffic.hpp"

namespace pfab {

// All renderers are byte-stable for identical inputs: ordered keys, fixed
// per-field decimal precision, '\n' line endings. JSON and CSV field names
// carry their units.

std::string render_budget(const LinkBudgetReport& report, RenderFormat format,
                          const std::string& label = "");
std::string render_comparison(const std::vector<MetricComparison>& rows, RenderFormat format);

std::string render_route(const Route& route, const LossBudget& budget, RenderFormat format);

std::string render_sim(const SimReport& report, RenderFormat format);
std::string render_sweep(const std::vector<SweepRow>& rows, RenderFormat format);

struct DeviceEvaluation {
  AddDropResonator calibrated;
  double on_resonance_drop_db = 0.0;
  double on_resonance_thru_db = 0.0;
  double off_resonance_thru_db = 0.0;
  double off_resonance_drop_db = 0.0;
  double fsr_ghz = 0.0;
  double fsr_nm = 0.0;
  WdmCarrierGrid grid;
  double grid_min_nm = 0.0;
  double grid_max_nm = 0.0;
  double bias_volts = 0.0;
  double e_dc_v_per_m = 0.0;
  double e_ac_v_per_m = 0.0;
  DeltaNTerms delta_n;
  double breakdown_volts = 0.0;
  double sensitivity_photocurrent_a = 0.0;
};

std::string render_devices(const DeviceEvaluation& eval, RenderFormat format);

// JSON-lines allocation trace, one record per slot.
struct TraceGrant {
  std::string src;
  std::string dst;
  int turns = 0;
  double loss_db = 0.0;
};
struct TraceDenial {
  std::string src;
  std::string dst;
  std::int64_t clash_segments = 0;
  std::int64_t clash_nodes = 0;
};
struct TraceRecord {
  std::int64_t slot = 0;
  std::vector<TraceGrant> granted;
  std::vector<TraceDenial> denied;
};

std::string render_trace_jsonl(const std::vector<TraceRecord>& records);

// Parsers for the JSON renderings above; used for round-trip checks and by
// consumers of the CLI output.
LinkBudgetReport budget_report_from_json(const std::string& text);
SimReport sim_report_from_json(const std::string& text);

}  // namespace pfab

#endif
