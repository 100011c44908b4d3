#include "pfab/budget.hpp"

#include <cmath>

#include "pfab/errors.hpp"

namespace pfab {

std::int64_t wires_of(const LinkClass& c) {
  switch (c.wiring) {
    case WiringKind::TlSingle: return c.link_count;
    case WiringKind::TlDiff: return 2 * c.link_count;
    case WiringKind::Wg:
      if (c.links_per_wire < 1) throw OutOfRangeError("links_per_wire must be at least 1");
      return (c.link_count + c.links_per_wire - 1) / c.links_per_wire;
  }
  throw InvalidStateError("bad wiring kind");
}

LinkBudgetReport analyze(const std::vector<LinkClass>& classes, double carrier_power_w,
                         double max_reach_mm, bool reach_is_lower_bound) {
  if (classes.empty()) throw OutOfRangeError("link class list is empty");
  if (carrier_power_w < 0) throw OutOfRangeError("carrier power must be nonnegative");

  std::int64_t bw_mbps = 0;   // only payload classes
  std::int64_t power_nw = 0;  // fJ/b * Mb/s = nW, all classes
  std::int64_t area_um2 = 0;

  LinkBudgetReport r;
  bool any_wg = false;
  for (const LinkClass& c : classes) {
    if (c.link_count <= 0 || c.rate_mbps <= 0 || c.energy_fj_per_bit <= 0)
      throw OutOfRangeError("link class " + c.name + " has a nonpositive field");
    if (c.area_um2_per_link < 0 || c.micro_bumps < 0)
      throw OutOfRangeError("link class " + c.name + " has a negative field");
    const std::int64_t class_bw = c.link_count * c.rate_mbps;
    if (c.counts_bandwidth) bw_mbps += class_bw;
    power_nw += c.energy_fj_per_bit * class_bw;  // fJ/b * Mb/s = nW, exact
    area_um2 += c.link_count * c.area_um2_per_link;
    r.total_links += c.link_count;
    r.total_bumps += c.micro_bumps;
    r.total_wires += wires_of(c);
    any_wg = any_wg || c.wiring == WiringKind::Wg;
  }
  if (bw_mbps == 0) throw Error("zero total bandwidth; energy metric undefined");

  const double carrier_nw = carrier_power_w * 1e9;
  const double total_nw = static_cast<double>(power_nw) + carrier_nw;

  r.wires_are_wg = any_wg;
  r.total_bandwidth_tbps = static_cast<double>(bw_mbps) / 1e6;
  r.total_power_w = total_nw / 1e9;
  r.carrier_power_w = carrier_power_w;
  r.total_area_mm2 = static_cast<double>(area_um2) / 1e6;
  // nW over Mb/s is fJ/b; report pJ/b.
  r.energy_pj_per_bit = total_nw / static_cast<double>(bw_mbps) / 1000.0;
  r.bw_density_tbps_mm2 = r.total_bandwidth_tbps / r.total_area_mm2;
  r.power_density_w_mm2 = r.total_power_w / r.total_area_mm2;
  r.max_reach_mm = max_reach_mm;
  r.reach_is_lower_bound = reach_is_lower_bound;
  return r;
}

PresetName preset_from_string(const std::string& name) {
  if (name == "silicon") return PresetName::SiliconUnit;
  if (name == "photonic") return PresetName::PhotonicUnit;
  throw NotFoundError("unknown preset: " + name);
}

Preset preset(PresetName name) {
  Preset p;
  switch (name) {
    case PresetName::SiliconUnit:
      p.classes = {
          {"HBM PHY", 384, 16000, 1010, 35250, 384, WiringKind::TlSingle, 1, true},
          {"UCIe PHY", 224, 32000, 600, 4500, 224, WiringKind::TlSingle, 1, true},
          // SerDes-side UCIe bumps per the table's own accounting; the
          // forwarded far-off bandwidth is already counted at the XPU.
          {"XSR SerDes PHY", 64, 112000, 1100, 120000, 224, WiringKind::TlDiff, 1, false},
      };
      p.carrier_power_w = 0.0;
      p.max_reach_mm = 50.0;
      p.reach_is_lower_bound = false;
      return p;
    case PresetName::PhotonicUnit:
      p.classes = {
          {"Nearby WDM", 384, 32000, 1150, 40000, 384, WiringKind::Wg, 32, true},
          {"Far-off WDM", 448, 32000, 1150, 40000, 448, WiringKind::Wg, 32, true},
      };
      p.carrier_power_w = 0.416;
      p.max_reach_mm = 500.0;
      p.reach_is_lower_bound = true;
      return p;
  }
  throw NotFoundError("unknown preset");
}

std::vector<MetricComparison> compare(const LinkBudgetReport& a, const LinkBudgetReport& b) {
  auto row = [](std::string metric, double va, double vb) {
    return MetricComparison{std::move(metric), va, vb, va == 0.0 ? 0.0 : vb / va, vb - va};
  };
  return {
      row("total_links", static_cast<double>(a.total_links), static_cast<double>(b.total_links)),
      row("total_bumps", static_cast<double>(a.total_bumps), static_cast<double>(b.total_bumps)),
      row("total_wires", static_cast<double>(a.total_wires), static_cast<double>(b.total_wires)),
      row("total_bandwidth_tbps", a.total_bandwidth_tbps, b.total_bandwidth_tbps),
      row("total_power_w", a.total_power_w, b.total_power_w),
      row("total_area_mm2", a.total_area_mm2, b.total_area_mm2),
      row("energy_pj_per_bit", a.energy_pj_per_bit, b.energy_pj_per_bit),
      row("bw_density_tbps_mm2", a.bw_density_tbps_mm2, b.bw_density_tbps_mm2),
      row("power_density_w_mm2", a.power_density_w_mm2, b.power_density_w_mm2),
      row("max_reach_mm", a.max_reach_mm, b.max_reach_mm),
  };
}

}  // namespace pfab
