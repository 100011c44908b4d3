#ifndef PFAB_BUDGET_HPP
#define PFAB_BUDGET_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pfab {

enum class WiringKind { TlSingle, TlDiff, Wg };

// One PHY class of a unit-interposer. Quantities are integer-scaled
// (Mb/s, fJ/b, um^2) so class totals accumulate exactly; rounding happens
// only when a report is formatted.
struct LinkClass {
  std::string name;
  std::int64_t link_count = 0;
  std::int64_t rate_mbps = 0;
  std::int64_t energy_fj_per_bit = 0;
  std::int64_t area_um2_per_link = 0;
  std::int64_t micro_bumps = 0;  // total for the class
  WiringKind wiring = WiringKind::TlSingle;
  std::int64_t links_per_wire = 1;  // used by WG wiring
  // Forwarding stages (the far-off SerDes hop) re-carry bandwidth that is
  // already counted at the XPU, so they add power and area but not
  // bandwidth.
  bool counts_bandwidth = true;

  bool operator==(const LinkClass&) const = default;
};

std::int64_t wires_of(const LinkClass& c);

struct LinkBudgetReport {
  std::int64_t total_links = 0;
  std::int64_t total_bumps = 0;
  std::int64_t total_wires = 0;
  bool wires_are_wg = false;
  double total_bandwidth_tbps = 0.0;
  double total_power_w = 0.0;
  double carrier_power_w = 0.0;
  double total_area_mm2 = 0.0;
  double energy_pj_per_bit = 0.0;
  double bw_density_tbps_mm2 = 0.0;
  double power_density_w_mm2 = 0.0;
  double max_reach_mm = 0.0;
  bool reach_is_lower_bound = false;

  bool operator==(const LinkBudgetReport&) const = default;
};

LinkBudgetReport analyze(const std::vector<LinkClass>& classes, double carrier_power_w,
                         double max_reach_mm = 0.0, bool reach_is_lower_bound = false);

enum class PresetName { SiliconUnit, PhotonicUnit };

PresetName preset_from_string(const std::string& name);

struct Preset {
  std::vector<LinkClass> classes;
  double carrier_power_w = 0.0;
  double max_reach_mm = 0.0;
  bool reach_is_lower_bound = false;
};

Preset preset(PresetName name);

struct MetricComparison {
  std::string metric;
  double a = 0.0;
  double b = 0.0;
  double ratio = 0.0;  // b / a
  double delta = 0.0;  // b - a
};

std::vector<MetricComparison> compare(const LinkBudgetReport& a, const LinkBudgetReport& b);

}  // namespace pfab

#endif
