// Command-line front end: budget, route, allocate, simulate, devices.
//
// Exit codes: 0 success, 2 config error, 3 infeasible route or allocation,
// 4 internal invariant violation.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pfab/allocator.hpp"
#include "pfab/budget.hpp"
#include "pfab/config.hpp"
#include "pfab/devices.hpp"
#include "pfab/errors.hpp"
#include "pfab/planner.hpp"
#include "pfab/render.hpp"
#include "pfab/traffic.hpp"
#include "pfab/units.hpp"

namespace {

using namespace pfab;

struct GlobalOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string format;
  bool json = false;
  bool csv = false;
};

RunConfig load(const GlobalOpts& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) cfg = load_config_file(g.config_path);
  if (!g.seed) {
    if (const char* env = std::getenv("PHOTONIC_FABRIC_SEED")) {
      try {
        cfg.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw ConfigError("PHOTONIC_FABRIC_SEED is not an integer");
      }
    }
  } else {
    cfg.seed = *g.seed;  // flags win
  }
  if (g.json) cfg.output_format = RenderFormat::Json;
  else if (g.csv) cfg.output_format = RenderFormat::Csv;
  else if (!g.format.empty()) cfg.output_format = render_format_from_string(g.format);
  return cfg;
}

int cmd_budget(const GlobalOpts& g, const std::string& preset_name, bool do_compare) {
  RunConfig cfg = load(g);
  LinkBudgetReport report;
  std::string label;
  if (cfg.budget.classes) {
    report = analyze(*cfg.budget.classes, cfg.budget.carrier_power_w, cfg.budget.max_reach_mm,
                     cfg.budget.reach_is_lower_bound);
    label = "custom";
  } else {
    PresetName name;
    try {
      name = preset_from_string(preset_name);
    } catch (const NotFoundError& e) {
      throw ConfigError(e.what());
    }
    Preset p = preset(name);
    report = analyze(p.classes, p.carrier_power_w, p.max_reach_mm, p.reach_is_lower_bound);
    label = preset_name + " unit-interposer";
  }
  if (do_compare) {
    Preset si = preset(PresetName::SiliconUnit);
    Preset ph = preset(PresetName::PhotonicUnit);
    auto a = analyze(si.classes, si.carrier_power_w, si.max_reach_mm, si.reach_is_lower_bound);
    auto b = analyze(ph.classes, ph.carrier_power_w, ph.max_reach_mm, ph.reach_is_lower_bound);
    std::cout << render_comparison(compare(a, b), cfg.output_format);
    return 0;
  }
  std::cout << render_budget(report, cfg.output_format, label);
  return 0;
}

int cmd_route(const GlobalOpts& g, const std::string& from, const std::string& to,
              const std::string& policy, std::optional<int> force_turns, int wg_index) {
  RunConfig cfg = load(g);
  PanelTopology panel = PanelTopology::build(cfg.panel);

  PlanOptions opts;
  opts.policy = policy == "min-turns" ? PlanPolicy::MinTurns : PlanPolicy::MinLoss;
  opts.max_turns = cfg.route.max_turns;
  opts.force_turns = force_turns;
  opts.wg_index = wg_index;
  opts.loss_model = cfg.loss_model;

  Route route = plan(panel, from, to, opts);

  double fixed_db = cfg.route.fixed_loss_db;
  if (cfg.route.wg_db_per_cm > 0) {
    double length_cm = 0.0;
    for (size_t i = 1; i < route.waypoints.size(); ++i) {
      const bool row_move = route.waypoints[i].row != route.waypoints[i - 1].row;
      length_cm += (row_move ? cfg.route.tile_pitch_row_mm : cfg.route.tile_pitch_col_mm) / 10.0;
    }
    fixed_db += cfg.route.wg_db_per_cm * length_cm;
  }
  LossBudget budget = loss_budget(route, cfg.loss_model, fixed_db, cfg.photodetector);

  if (cfg.output_format == RenderFormat::Table) {
    // Human table plus the machine-readable record.
    std::cout << render_route(route, budget, RenderFormat::Table);
    std::cout << render_route(route, budget, RenderFormat::Json);
  } else {
    std::cout << render_route(route, budget, cfg.output_format);
  }
  return 0;
}

int cmd_allocate(const GlobalOpts& g) {
  RunConfig cfg = load(g);
  if (cfg.allocate.requests.empty())
    throw ConfigError("allocate needs requests in the config ('allocate.requests')");
  PanelTopology panel = PanelTopology::build(cfg.panel);

  std::map<std::int64_t, std::vector<const AllocateRequestConfig*>> by_slot;
  std::int64_t last_slot = 0;
  for (const auto& r : cfg.allocate.requests) {
    by_slot[r.slot].push_back(&r);
    last_slot = std::max(last_slot, r.slot);
  }

  SlotAllocation alloc(&panel, 0, cfg.loss_model);
  std::vector<std::pair<std::int64_t, Route>> expiry;  // (release slot, route)
  std::vector<TraceRecord> records;

  for (std::int64_t slot = 0; slot <= last_slot; ++slot) {
    if (cfg.allocate.hold_slots > 0) {
      for (auto it = expiry.begin(); it != expiry.end();) {
        if (it->first == slot) {
          alloc.remove(it->second);
          it = expiry.erase(it);
        } else {
          ++it;
        }
      }
    }
    auto it = by_slot.find(slot);
    if (it == by_slot.end()) continue;

    TraceRecord rec;
    rec.slot = slot;
    for (const AllocateRequestConfig* req : it->second) {
      PlanOptions opts;
      opts.max_turns = cfg.route.max_turns;
      opts.force_turns = req->force_turns;
      opts.wg_index = req->wg_index;
      opts.loss_model = cfg.loss_model;
      Route route = plan(panel, req->from, req->to, opts);
      ConflictReport conflicts = alloc.try_add(route);
      if (conflicts.empty()) {
        LossBudget b =
            loss_budget(route, cfg.loss_model, cfg.route.fixed_loss_db, cfg.photodetector);
        rec.granted.push_back({req->from, req->to, route.turn_count(), b.total_loss_db});
        if (cfg.allocate.hold_slots > 0)
          expiry.emplace_back(slot + cfg.allocate.hold_slots, route);
      } else {
        rec.denied.push_back({req->from, req->to,
                              static_cast<std::int64_t>(conflicts.segments.size()),
                              static_cast<std::int64_t>(conflicts.nodes.size())});
      }
    }
    records.push_back(std::move(rec));
  }
  std::cout << render_trace_jsonl(records);
  return 0;
}

int cmd_simulate(const GlobalOpts& g, std::optional<std::int64_t> slots,
                 const std::string& csv_path) {
  RunConfig cfg = load(g);
  WorkloadParams wp = effective_workload(cfg);
  if (slots) wp.slots = *slots;

  const bool has_grid = !cfg.sweep.xpu_duty.empty() || !cfg.sweep.rate.empty() ||
                        !cfg.sweep.wg_per_bundle.empty();
  std::string csv_text;
  std::string stdout_text;
  if (has_grid) {
    auto rows = sweep(cfg.panel, wp, make_sim_config(cfg), cfg.sweep);
    csv_text = render_sweep(rows, RenderFormat::Csv);
    stdout_text = render_sweep(rows, cfg.output_format);
  } else {
    PanelTopology panel = PanelTopology::build(cfg.panel);
    Workload wl = generate(panel, wp);
    SimReport report = run(panel, wl, make_sim_config(cfg));
    csv_text = render_sim(report, RenderFormat::Csv);
    stdout_text = render_sim(report, cfg.output_format);
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write CSV file: " + csv_path);
    out << csv_text;
  }
  std::cout << stdout_text;
  return 0;
}

int cmd_devices(const GlobalOpts& g, double fsr_ghz, double bias_volts, double e_ac) {
  RunConfig cfg = load(g);

  DeviceEvaluation e;
  e.calibrated = calibrate_switch(cfg.loss_model, fsr_ghz * 1e9);
  e.grid = make_carrier_grid(cfg);

  const double center = e.grid.center_wavelength;
  const double on = nearest_resonance(e.calibrated, center);
  FsrResult f = fsr(e.calibrated, center);
  const double off = on + 0.5 * f.fsr_wavelength;
  TransferPoint tp_on = transfer(e.calibrated, on);
  TransferPoint tp_off = transfer(e.calibrated, off);
  e.on_resonance_drop_db = linear_to_db(tp_on.drop_power);
  e.on_resonance_thru_db = linear_to_db(tp_on.thru_power);
  e.off_resonance_thru_db = linear_to_db(tp_off.thru_power);
  e.off_resonance_drop_db = linear_to_db(tp_off.drop_power);
  e.fsr_ghz = f.fsr_frequency / 1e9;
  e.fsr_nm = f.fsr_wavelength * 1e9;

  auto lambdas = carrier_wavelengths(e.grid);
  e.grid_min_nm = lambdas.front() * 1e9;
  e.grid_max_nm = lambdas.back() * 1e9;

  e.bias_volts = bias_volts;
  e.e_dc_v_per_m = dc_field_from_voltage(cfg.material, bias_volts);
  e.e_ac_v_per_m = e_ac;
  e.delta_n = delta_n_terms(cfg.material, e.e_dc_v_per_m, e_ac);
  e.breakdown_volts = breakdown_voltage(cfg.material);
  e.sensitivity_photocurrent_a = photocurrent(
      cfg.photodetector, dbm_to_mw(cfg.photodetector.sensitivity_dbm) * 1e-3);

  std::cout << render_devices(e, cfg.output_format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Panel-scale reconfigurable photonic fabric toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON configuration file");
  app.add_option("--seed", g.seed, "Seed override (beats config and PHOTONIC_FABRIC_SEED)");
  app.add_option("--format", g.format, "Output format: table, json or csv");
  app.add_flag("--json", g.json, "Shortcut for --format json");
  app.add_flag("--csv-format", g.csv, "Shortcut for --format csv");

  auto* budget_cmd = app.add_subcommand("budget", "Unit-interposer link budget");
  std::string preset_name = "silicon";
  bool do_compare = false;
  budget_cmd->add_option("--preset", preset_name, "silicon or photonic");
  budget_cmd->add_flag("--compare", do_compare, "Compare the two presets");

  auto* route_cmd = app.add_subcommand("route", "Plan an optical path between two EICs");
  std::string from, to, policy = "min-loss";
  std::optional<int> force_turns;
  int wg_index = 0;
  route_cmd->add_option("--from", from, "Source EIC id")->required();
  route_cmd->add_option("--to", to, "Destination EIC id")->required();
  route_cmd->add_option("--policy", policy, "min-loss or min-turns")
      ->check(CLI::IsMember({"min-loss", "min-turns"}));
  route_cmd->add_option("--force-turns", force_turns, "Force an exact turn count (0-2)");
  route_cmd->add_option("--wg-index", wg_index, "Waveguide lane");

  auto* alloc_cmd = app.add_subcommand("allocate", "Admit configured requests slot by slot");

  auto* sim_cmd = app.add_subcommand("simulate", "Slotted traffic simulation");
  std::optional<std::int64_t> slots;
  std::string csv_path;
  sim_cmd->add_option("--slots", slots, "Number of slots to simulate");
  sim_cmd->add_option("--csv", csv_path, "Write the CSV report to this file");

  auto* dev_cmd = app.add_subcommand("devices", "Device-level models and calibration");
  double fsr_ghz = 100.0, bias_volts = 5.0, e_ac = 1e6;
  dev_cmd->add_option("--fsr-ghz", fsr_ghz, "Switch/comb FSR target in GHz");
  dev_cmd->add_option("--bias-volts", bias_volts, "DC bias for the field model");
  dev_cmd->add_option("--e-ac", e_ac, "AC field amplitude in V/m");

  try {
    app.parse(argc, argv);
    if (budget_cmd->parsed()) return cmd_budget(g, preset_name, do_compare);
    if (route_cmd->parsed()) return cmd_route(g, from, to, policy, force_turns, wg_index);
    if (alloc_cmd->parsed()) return cmd_allocate(g);
    if (sim_cmd->parsed()) return cmd_simulate(g, slots, csv_path);
    if (dev_cmd->parsed()) return cmd_devices(g, fsr_ghz, bias_volts, e_ac);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const NotFoundError& e) {
    std::cerr << "not found: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
