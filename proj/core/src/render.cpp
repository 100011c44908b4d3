#include "pfab/render.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "pfab/errors.hpp"

namespace pfab {

namespace {

using nlohmann::ordered_json;

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string reach_text(const LinkBudgetReport& r) {
  return (r.reach_is_lower_bound ? "> " : "< ") + fixed(r.max_reach_mm, 0);
}

ordered_json budget_json(const LinkBudgetReport& r) {
  ordered_json j;
  j["total_links"] = r.total_links;
  j["total_micro_bumps"] = r.total_bumps;
  j["total_wires"] = r.total_wires;
  j["wires_are_wg"] = r.wires_are_wg;
  j["total_bandwidth_tbps"] = r.total_bandwidth_tbps;
  j["total_power_w"] = r.total_power_w;
  j["carrier_power_w"] = r.carrier_power_w;
  j["total_area_mm2"] = r.total_area_mm2;
  j["energy_pj_per_bit"] = r.energy_pj_per_bit;
  j["bw_density_tbps_mm2"] = r.bw_density_tbps_mm2;
  j["power_density_w_mm2"] = r.power_density_w_mm2;
  j["max_reach_mm"] = r.max_reach_mm;
  j["reach_is_lower_bound"] = r.reach_is_lower_bound;
  return j;
}

ordered_json sim_json(const SimReport& r) {
  ordered_json j;
  j["slots_run"] = r.slots_run;
  j["offered_bits"] = r.offered_bits;
  j["bits_delivered"] = r.bits_delivered;
  j["requests_arrived"] = r.requests_arrived;
  j["requests_granted"] = r.requests_granted;
  j["requests_blocked"] = r.requests_blocked;
  j["requests_dropped"] = r.requests_dropped;
  j["blocking_probability"] = r.blocking_probability;
  j["mean_wait_slots"] = r.mean_wait_slots;
  j["mean_path_loss_db"] = r.mean_path_loss_db;
  j["peak_concurrent_routes"] = r.peak_concurrent_routes;
  j["carrier_energy_ws"] = r.carrier_energy_ws;
  j["max_route_bits_per_slot"] = r.max_route_bits_per_slot;
  j["reconfig_slots"] = r.reconfig_slots;
  return j;
}

const char* kSimCsvHeader =
    "slots_run,offered_bits,bits_delivered,requests_arrived,requests_granted,"
    "requests_blocked,requests_dropped,blocking_probability,mean_wait_slots,"
    "mean_path_loss_db,peak_concurrent_routes,carrier_energy_ws,"
    "max_route_bits_per_slot,reconfig_slots";

std::string sim_csv_row(const SimReport& r) {
  std::ostringstream out;
  out << r.slots_run << ',' << r.offered_bits << ',' << r.bits_delivered << ','
      << r.requests_arrived << ',' << r.requests_granted << ',' << r.requests_blocked << ','
      << r.requests_dropped << ',' << fixed(r.blocking_probability, 6) << ','
      << fixed(r.mean_wait_slots, 4) << ',' << fixed(r.mean_path_loss_db, 4) << ','
      << r.peak_concurrent_routes << ',' << fixed(r.carrier_energy_ws, 9) << ','
      << r.max_route_bits_per_slot << ',' << r.reconfig_slots;
  return out.str();
}

}  // namespace

std::string render_budget(const LinkBudgetReport& r, RenderFormat format,
                          const std::string& label) {
  switch (format) {
    case RenderFormat::Json:
      return budget_json(r).dump(2) + "\n";
    case RenderFormat::Csv: {
      std::ostringstream out;
      out << "metric,value,unit\n";
      out << "total_links," << r.total_links << ",links\n";
      out << "total_micro_bumps," << r.total_bumps << ",bumps\n";
      out << "total_wires," << r.total_wires << ',' << (r.wires_are_wg ? "wg" : "tl") << "\n";
      out << "total_bandwidth," << fixed(r.total_bandwidth_tbps, 3) << ",tbps\n";
      out << "total_power," << fixed(r.total_power_w, 3) << ",w\n";
      out << "carrier_power," << fixed(r.carrier_power_w, 3) << ",w\n";
      out << "total_area," << fixed(r.total_area_mm2, 3) << ",mm2\n";
      out << "energy_efficiency," << fixed(r.energy_pj_per_bit, 2) << ",pj_per_bit\n";
      out << "bandwidth_density," << fixed(r.bw_density_tbps_mm2, 2) << ",tbps_per_mm2\n";
      out << "power_density," << fixed(r.power_density_w_mm2, 2) << ",w_per_mm2\n";
      out << "max_reach," << fixed(r.max_reach_mm, 0) << ",mm\n";
      return out.str();
    }
    case RenderFormat::Table: {
      std::ostringstream out;
      if (!label.empty()) out << "Link budget: " << label << "\n";
      out << "Total # of micro-bumps for data links: " << r.total_bumps << "\n";
      out << (r.wires_are_wg ? "Total # of WGs for data links: "
                             : "Total # of TLs for data links: ")
          << r.total_wires << "\n";
      out << "Total data bandwidth per XPU (Tb/s): " << fixed(r.total_bandwidth_tbps, 3) << "\n";
      out << "Total power of data links (W): " << fixed(r.total_power_w, 3) << "\n";
      out << "Total area of data links (mm2): " << fixed(r.total_area_mm2, 3) << "\n";
      out << "Energy efficiency of data links (pJ/b): " << fixed(r.energy_pj_per_bit, 2) << "\n";
      out << "Bandwidth density of data links (Tb/s/mm2): " << fixed(r.bw_density_tbps_mm2, 2)
          << "\n";
      out << "Power density of data links (W/mm2): " << fixed(r.power_density_w_mm2, 2) << "\n";
      out << "Maximum far-off interconnect distance (mm): " << reach_text(r) << "\n";
      return out.str();
    }
  }
  throw InvalidStateError("bad render format");
}

std::string render_comparison(const std::vector<MetricComparison>& rows, RenderFormat format) {
  switch (format) {
    case RenderFormat::Json: {
      ordered_json arr = ordered_json::array();
      for (const auto& m : rows)
        arr.push_back({{"metric", m.metric},
                       {"a", m.a},
                       {"b", m.b},
                       {"ratio_b_over_a", m.ratio},
                       {"delta_b_minus_a", m.delta}});
      return arr.dump(2) + "\n";
    }
    case RenderFormat::Csv: {
      std::ostringstream out;
      out << "metric,a,b,ratio_b_over_a,delta_b_minus_a\n";
      for (const auto& m : rows)
        out << m.metric << ',' << fixed(m.a, 6) << ',' << fixed(m.b, 6) << ','
            << fixed(m.ratio, 6) << ',' << fixed(m.delta, 6) << "\n";
      return out.str();
    }
    case RenderFormat::Table: {
      std::ostringstream out;
      for (const auto& m : rows)
        out << m.metric << ": " << fixed(m.a, 3) << " vs " << fixed(m.b, 3)
            << " (ratio " << fixed(m.ratio, 3) << ")\n";
      return out.str();
    }
  }
  throw InvalidStateError("bad render format");
}

std::string render_route(const Route& route, const LossBudget& budget, RenderFormat format) {
  switch (format) {
    case RenderFormat::Json: {
      ordered_json j;
      j["src"] = route.src;
      j["dst"] = route.dst;
      j["wg_index"] = route.wg_index;
      ordered_json tiles = ordered_json::array();
      for (TileCoord c : route.waypoints) tiles.push_back({{"row", c.row}, {"col", c.col}});
      j["waypoints"] = tiles;
      ordered_json ints = ordered_json::array();
      for (const Interaction& ia : route.interactions)
        ints.push_back({{"row", ia.tile.row},
                        {"col", ia.tile.col},
                        {"kind", ia.kind == InteractionKind::Turn ? "turn" : "bypass"}});
      j["interactions"] = ints;
      j["n_bypass"] = budget.n_bypass;
      j["n_turn"] = budget.n_turn;
      j["switch_loss_db"] = budget.switch_loss_db;
      j["fixed_loss_db"] = budget.fixed_loss_db;
      j["total_loss_db"] = budget.total_loss_db;
      j["required_carrier_dbm"] = budget.required_carrier_dbm;
      j["required_carrier_mw"] = budget.required_carrier_mw;
      return j.dump(2) + "\n";
    }
    case RenderFormat::Csv: {
      std::ostringstream out;
      out << "metric,value,unit\n";
      out << "hops," << route.interactions.size() << ",interactions\n";
      out << "bypasses," << budget.n_bypass << ",interactions\n";
      out << "turns," << budget.n_turn << ",interactions\n";
      out << "switch_loss," << fixed(budget.switch_loss_db, 3) << ",db\n";
      out << "fixed_loss," << fixed(budget.fixed_loss_db, 3) << ",db\n";
      out << "total_loss," << fixed(budget.total_loss_db, 3) << ",db\n";
      out << "required_carrier," << fixed(budget.required_carrier_dbm, 3) << ",dbm\n";
      out << "required_carrier," << fixed(budget.required_carrier_mw, 4) << ",mw\n";
      return out.str();
    }
    case RenderFormat::Table: {
      std::ostringstream out;
      out << "Route " << route.src << " -> " << route.dst << " on WG lane " << route.wg_index
          << "\n";
      out << "Tiles:";
      for (TileCoord c : route.waypoints) out << " (" << c.row << "," << c.col << ")";
      out << "\n";
      out << "Interactions: " << budget.n_bypass << " bypass + " << budget.n_turn << " turn\n";
      out << "Switch loss (dB): " << fixed(budget.switch_loss_db, 2) << "\n";
      out << "Fixed loss (dB): " << fixed(budget.fixed_loss_db, 2) << "\n";
      out << "Total loss (dB): " << fixed(budget.total_loss_db, 2) << "\n";
      out << "Required carrier power (dBm): " << fixed(budget.required_carrier_dbm, 2) << "\n";
      out << "Required carrier power (mW): " << fixed(budget.required_carrier_mw, 3) << "\n";
      return out.str();
    }
  }
  throw InvalidStateError("bad render format");
}

std::string render_sim(const SimReport& r, RenderFormat format) {
  switch (format) {
    case RenderFormat::Json:
      return sim_json(r).dump(2) + "\n";
    case RenderFormat::Csv:
      return std::string(kSimCsvHeader) + "\n" + sim_csv_row(r) + "\n";
    case RenderFormat::Table: {
      std::ostringstream out;
      out << "Slots run: " << r.slots_run << "\n";
      out << "Offered (bits): " << r.offered_bits << "\n";
      out << "Delivered (bits): " << r.bits_delivered << "\n";
      out << "Requests arrived/granted/blocked/dropped: " << r.requests_arrived << "/"
          << r.requests_granted << "/" << r.requests_blocked << "/" << r.requests_dropped
          << "\n";
      out << "Blocking probability: " << fixed(r.blocking_probability, 4) << "\n";
      out << "Mean wait (slots): " << fixed(r.mean_wait_slots, 3) << "\n";
      out << "Mean path loss (dB): " << fixed(r.mean_path_loss_db, 3) << "\n";
      out << "Peak concurrent routes: " << r.peak_concurrent_routes << "\n";
      out << "Carrier energy (W*s): " << fixed(r.carrier_energy_ws, 9) << "\n";
      return out.str();
    }
  }
  throw InvalidStateError("bad render format");
}

std::string render_sweep(const std::vector<SweepRow>& rows, RenderFormat format) {
  switch (format) {
    case RenderFormat::Json: {
      ordered_json arr = ordered_json::array();
      for (const auto& row : rows) {
        ordered_json j;
        j["xpu_duty"] = row.xpu_duty;
        j["rate_per_slot"] = row.rate;
        j["wg_per_bundle"] = row.wg_per_bundle;
        j["seed"] = row.seed;
        j["report"] = sim_json(row.report);
        arr.push_back(j);
      }
      return arr.dump(2) + "\n";
    }
    case RenderFormat::Csv:
    case RenderFormat::Table: {
      std::ostringstream out;
      out << "xpu_duty,rate_per_slot,wg_per_bundle,seed," << kSimCsvHeader << "\n";
      for (const auto& row : rows)
        out << fixed(row.xpu_duty, 3) << ',' << fixed(row.rate, 3) << ',' << row.wg_per_bundle
            << ',' << row.seed << ',' << sim_csv_row(row.report) << "\n";
      return out.str();
    }
  }
  throw InvalidStateError("bad render format");
}

std::string render_devices(const DeviceEvaluation& e, RenderFormat format) {
  if (format == RenderFormat::Json || format == RenderFormat::Csv) {
    ordered_json j;
    j["resonator"] = {{"self_coupling", e.calibrated.self_coupling_in},
                      {"round_trip_amplitude", e.calibrated.round_trip_amplitude},
                      {"round_trip_length_m", e.calibrated.round_trip_length},
                      {"group_index", e.calibrated.group_index}};
    j["on_resonance_drop_db"] = e.on_resonance_drop_db;
    j["on_resonance_thru_db"] = e.on_resonance_thru_db;
    j["off_resonance_thru_db"] = e.off_resonance_thru_db;
    j["off_resonance_drop_db"] = e.off_resonance_drop_db;
    j["fsr_ghz"] = e.fsr_ghz;
    j["fsr_nm"] = e.fsr_nm;
    j["grid"] = {{"carrier_count", e.grid.carrier_count},
                 {"spacing_nm", e.grid.spacing * 1e9},
                 {"center_nm", e.grid.center_wavelength * 1e9},
                 {"min_nm", e.grid_min_nm},
                 {"max_nm", e.grid_max_nm},
                 {"power_per_carrier_mw", e.grid.power_per_carrier * 1e3}};
    j["bias_volts"] = e.bias_volts;
    j["e_dc_v_per_m"] = e.e_dc_v_per_m;
    j["e_ac_v_per_m"] = e.e_ac_v_per_m;
    j["delta_n"] = {{"dc_chi2", e.delta_n.dc_chi2},   {"dc_chi3", e.delta_n.dc_chi3},
                    {"ac_chi2", e.delta_n.ac_chi2},   {"ac_chi3", e.delta_n.ac_chi3},
                    {"mixed", e.delta_n.mixed},       {"dn_dc", e.delta_n.dn_dc},
                    {"dn_ac", e.delta_n.dn_ac}};
    j["breakdown_volts"] = e.breakdown_volts;
    j["sensitivity_photocurrent_a"] = e.sensitivity_photocurrent_a;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "Calibrated switch resonator: t = " << fixed(e.calibrated.self_coupling_in, 4)
      << ", a = " << fixed(e.calibrated.round_trip_amplitude, 5)
      << ", L = " << fixed(e.calibrated.round_trip_length * 1e6, 2) << " um"
      << ", n_g = " << fixed(e.calibrated.group_index, 3) << "\n";
  out << "On-resonance drop (dB): " << fixed(e.on_resonance_drop_db, 3) << "\n";
  out << "On-resonance through (dB): " << fixed(e.on_resonance_thru_db, 2) << "\n";
  out << "Off-resonance through (dB): " << fixed(e.off_resonance_thru_db, 3) << "\n";
  out << "Off-resonance drop (dB): " << fixed(e.off_resonance_drop_db, 2) << "\n";
  out << "FSR: " << fixed(e.fsr_ghz, 3) << " GHz (" << fixed(e.fsr_nm, 4) << " nm)\n";
  out << "Carrier grid: " << e.grid.carrier_count << " x " << fixed(e.grid.spacing * 1e9, 3)
      << " nm around " << fixed(e.grid.center_wavelength * 1e9, 1) << " nm, span ["
      << fixed(e.grid_min_nm, 1) << ", " << fixed(e.grid_max_nm, 1) << "] nm\n";
  out << "DC field at " << fixed(e.bias_volts, 1) << " V: " << fixed(e.e_dc_v_per_m / 1e6, 3)
      << " V/um\n";
  out << "Delta-n (DC): " << e.delta_n.dn_dc << "\n";
  out << "Delta-n (AC): " << e.delta_n.dn_ac << "\n";
  out << "Heterodyne mixed term: " << e.delta_n.mixed << "\n";
  out << "Breakdown voltage (V): " << fixed(e.breakdown_volts, 1) << "\n";
  out << "Photocurrent at RX sensitivity (A): " << e.sensitivity_photocurrent_a << "\n";
  return out.str();
}

std::string render_trace_jsonl(const std::vector<TraceRecord>& records) {
  std::ostringstream out;
  for (const TraceRecord& rec : records) {
    ordered_json j;
    j["slot"] = rec.slot;
    ordered_json granted = ordered_json::array();
    for (const TraceGrant& g : rec.granted)
      granted.push_back(
          {{"src", g.src}, {"dst", g.dst}, {"turns", g.turns}, {"loss_db", g.loss_db}});
    j["granted"] = granted;
    ordered_json denied = ordered_json::array();
    for (const TraceDenial& d : rec.denied)
      denied.push_back({{"src", d.src},
                        {"dst", d.dst},
                        {"clash_segments", d.clash_segments},
                        {"clash_nodes", d.clash_nodes}});
    j["denied"] = denied;
    out << j.dump() << "\n";
  }
  return out.str();
}

LinkBudgetReport budget_report_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  LinkBudgetReport r;
  r.total_links = j.at("total_links").get<std::int64_t>();
  r.total_bumps = j.at("total_micro_bumps").get<std::int64_t>();
  r.total_wires = j.at("total_wires").get<std::int64_t>();
  r.wires_are_wg = j.at("wires_are_wg").get<bool>();
  r.total_bandwidth_tbps = j.at("total_bandwidth_tbps").get<double>();
  r.total_power_w = j.at("total_power_w").get<double>();
  r.carrier_power_w = j.at("carrier_power_w").get<double>();
  r.total_area_mm2 = j.at("total_area_mm2").get<double>();
  r.energy_pj_per_bit = j.at("energy_pj_per_bit").get<double>();
  r.bw_density_tbps_mm2 = j.at("bw_density_tbps_mm2").get<double>();
  r.power_density_w_mm2 = j.at("power_density_w_mm2").get<double>();
  r.max_reach_mm = j.at("max_reach_mm").get<double>();
  r.reach_is_lower_bound = j.at("reach_is_lower_bound").get<bool>();
  return r;
}

SimReport sim_report_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  SimReport r;
  r.slots_run = j.at("slots_run").get<std::int64_t>();
  r.offered_bits = j.at("offered_bits").get<std::int64_t>();
  r.bits_delivered = j.at("bits_delivered").get<std::int64_t>();
  r.requests_arrived = j.at("requests_arrived").get<std::int64_t>();
  r.requests_granted = j.at("requests_granted").get<std::int64_t>();
  r.requests_blocked = j.at("requests_blocked").get<std::int64_t>();
  r.requests_dropped = j.at("requests_dropped").get<std::int64_t>();
  r.blocking_probability = j.at("blocking_probability").get<double>();
  r.mean_wait_slots = j.at("mean_wait_slots").get<double>();
  r.mean_path_loss_db = j.at("mean_path_loss_db").get<double>();
  r.peak_concurrent_routes = j.at("peak_concurrent_routes").get<int>();
  r.carrier_energy_ws = j.at("carrier_energy_ws").get<double>();
  r.max_route_bits_per_slot = j.at("max_route_bits_per_slot").get<std::int64_t>();
  r.reconfig_slots = j.at("reconfig_slots").get<int>();
  return r;
}

}  // namespace pfab
