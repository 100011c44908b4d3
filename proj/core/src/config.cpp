#include "pfab/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pfab/errors.hpp"

namespace pfab {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path.empty() ? what : what + ": " + path);
}

class Cursor {
public:
  Cursor(const ordered_json& node, std::string path) : node_(&node), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  void expect_object() const {
    if (!node_->is_object()) fail(path_, "expected an object");
  }

  void reject_unknown(const std::set<std::string>& known) const {
    expect_object();
    for (const auto& [key, value] : node_->items())
      if (!known.count(key)) fail(join(key), "unknown key");
  }

  bool has(const std::string& key) const { return node_->contains(key); }

  Cursor child(const std::string& key) const { return {(*node_)[key], join(key)}; }

  double number(double lo, double hi) const {
    if (!node_->is_number()) fail(path_, "expected a number");
    const double v = node_->get<double>();
    if (!(v >= lo && v <= hi)) fail(path_, "out of range");
    return v;
  }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) const {
    if (!node_->is_number_integer()) fail(path_, "expected an integer");
    const std::int64_t v = node_->get<std::int64_t>();
    if (v < lo || v > hi) fail(path_, "out of range");
    return v;
  }

  bool boolean() const {
    if (!node_->is_boolean()) fail(path_, "expected a boolean");
    return node_->get<bool>();
  }

  std::string text() const {
    if (!node_->is_string()) fail(path_, "expected a string");
    return node_->get<std::string>();
  }

  const ordered_json& raw() const { return *node_; }

private:
  std::string join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const ordered_json* node_;
  std::string path_;
};

void get_number(const Cursor& parent, const std::string& key, double& out, double lo, double hi) {
  if (parent.has(key)) out = parent.child(key).number(lo, hi);
}

template <typename Int>
void get_int(const Cursor& parent, const std::string& key, Int& out, std::int64_t lo,
             std::int64_t hi) {
  if (parent.has(key)) out = static_cast<Int>(parent.child(key).integer(lo, hi));
}

void get_bool(const Cursor& parent, const std::string& key, bool& out) {
  if (parent.has(key)) out = parent.child(key).boolean();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

void parse_panel(const Cursor& c, PanelSpec& panel) {
  c.reject_unknown({"rows", "cols", "wg_per_bundle", "lambdas_per_wg", "tile_template"});
  get_int(c, "rows", panel.rows, 1, 1 << 16);
  get_int(c, "cols", panel.cols, 1, 1 << 16);
  get_int(c, "wg_per_bundle", panel.wg_per_bundle, 1, 1 << 16);
  get_int(c, "lambdas_per_wg", panel.lambdas_per_wg, 1, 1 << 16);
  if (c.has("tile_template")) {
    Cursor t = c.child("tile_template");
    t.reject_unknown({"hbm_stacks", "xpu_links", "hbm_links_per_stack"});
    get_int(t, "hbm_stacks", panel.tile_template.hbm_stacks, 0, 1 << 16);
    get_int(t, "xpu_links", panel.tile_template.xpu_links, 0, 1 << 20);
    get_int(t, "hbm_links_per_stack", panel.tile_template.hbm_links_per_stack, 0, 1 << 20);
  }
}

void parse_loss_model(const Cursor& c, SwitchLossModel& m) {
  c.reject_unknown(
      {"drop_on_db", "thru_off_db", "thru_on_isolation_db", "drop_off_isolation_db"});
  get_number(c, "drop_on_db", m.drop_on_db, 0, 1e3);
  get_number(c, "thru_off_db", m.thru_off_db, 0, 1e3);
  get_number(c, "thru_on_isolation_db", m.thru_on_isolation_db, 0, kInf);
  get_number(c, "drop_off_isolation_db", m.drop_off_isolation_db, 0, kInf);
  try {
    m.validate();
  } catch (const Error& e) {
    fail(c.path(), e.what());
  }
}

void parse_route(const Cursor& c, RoutePlanningConfig& r) {
  c.reject_unknown({"fixed_loss_db", "max_turns", "wg_db_per_cm", "tile_pitch_col_mm",
                    "tile_pitch_row_mm"});
  get_number(c, "fixed_loss_db", r.fixed_loss_db, 0, 1e3);
  get_int(c, "max_turns", r.max_turns, 0, 64);
  get_number(c, "wg_db_per_cm", r.wg_db_per_cm, 0, 1e3);
  get_number(c, "tile_pitch_col_mm", r.tile_pitch_col_mm, 1e-3, 1e4);
  get_number(c, "tile_pitch_row_mm", r.tile_pitch_row_mm, 1e-3, 1e4);
}

void parse_material(const Cursor& c, SrnMaterial& m) {
  c.reject_unknown({"chi2_m_per_v", "chi3_m2_per_v2", "base_index", "breakdown_field_v_per_m",
                    "field_per_volt"});
  get_number(c, "chi2_m_per_v", m.chi2, 0, 1);
  get_number(c, "chi3_m2_per_v2", m.chi3, 0, 1);
  get_number(c, "base_index", m.base_index, 1.0 + 1e-9, 20);
  get_number(c, "breakdown_field_v_per_m", m.breakdown_field, 1, 1e12);
  get_number(c, "field_per_volt", m.field_per_volt, 1e-9, 1e12);
}

void parse_photodetector(const Cursor& c, Photodetector& pd) {
  c.reject_unknown({"responsivity_a_per_w", "sensitivity_dbm"});
  get_number(c, "responsivity_a_per_w", pd.responsivity, 1e-6, 1e3);
  get_number(c, "sensitivity_dbm", pd.sensitivity_dbm, -100, 100);
}

void parse_carrier_grid(const Cursor& c, CarrierGridConfig& g) {
  c.reject_unknown(
      {"carrier_count", "spacing_nm", "center_wavelength_nm", "power_per_carrier_mw"});
  get_int(c, "carrier_count", g.carrier_count, 1, 1 << 20);
  get_number(c, "spacing_nm", g.spacing_nm, 1e-6, 1e6);
  get_number(c, "center_wavelength_nm", g.center_wavelength_nm, 1, 1e7);
  get_number(c, "power_per_carrier_mw", g.power_per_carrier_mw, 1e-9, 1e6);
}

void parse_workload(const Cursor& c, WorkloadParams& w) {
  c.reject_unknown({"seed", "rate", "nearby_fraction", "xpu_duty", "slots", "size_bits"});
  get_int(c, "seed", w.seed, 0, std::numeric_limits<std::int64_t>::max());
  get_number(c, "rate", w.rate, 0, 100);
  get_number(c, "nearby_fraction", w.nearby_fraction, 0, 1);
  get_number(c, "xpu_duty", w.xpu_duty, 0.5, 0.9);
  get_int(c, "slots", w.slots, 0, 1LL << 40);
  get_int(c, "size_bits", w.size_bits, 1, 1LL << 50);
}

void parse_sim(const Cursor& c, SimSettings& s) {
  c.reject_unknown(
      {"slot_seconds", "link_rate_gbps", "drop_blocked", "random_order", "reconfig_slots"});
  get_number(c, "slot_seconds", s.slot_seconds, 1e-12, 1e3);
  get_number(c, "link_rate_gbps", s.link_rate_gbps, 1e-3, 1e6);
  get_bool(c, "drop_blocked", s.drop_blocked);
  get_bool(c, "random_order", s.random_order);
  get_int(c, "reconfig_slots", s.reconfig_slots, 0, 1 << 20);
}

void parse_sweep(const Cursor& c, SweepGrid& g) {
  c.reject_unknown({"xpu_duty", "rate", "wg_per_bundle"});
  auto list_of = [&](const std::string& key, auto& out, auto convert) {
    if (!c.has(key)) return;
    Cursor lc = c.child(key);
    if (!lc.raw().is_array()) fail(lc.path(), "expected an array");
    size_t i = 0;
    for (const auto& item : lc.raw()) {
      Cursor ic(item, lc.path() + "[" + std::to_string(i++) + "]");
      out.push_back(convert(ic));
    }
  };
  list_of("xpu_duty", g.xpu_duty, [](const Cursor& ic) { return ic.number(0.5, 0.9); });
  list_of("rate", g.rate, [](const Cursor& ic) { return ic.number(0, 100); });
  list_of("wg_per_bundle", g.wg_per_bundle,
          [](const Cursor& ic) { return static_cast<int>(ic.integer(1, 1 << 16)); });
}

WiringKind wiring_from_string(const Cursor& c) {
  const std::string s = c.text();
  if (s == "tl_single") return WiringKind::TlSingle;
  if (s == "tl_diff") return WiringKind::TlDiff;
  if (s == "wg") return WiringKind::Wg;
  fail(c.path(), "unknown wiring kind '" + s + "'");
}

std::string wiring_to_string(WiringKind k) {
  switch (k) {
    case WiringKind::TlSingle: return "tl_single";
    case WiringKind::TlDiff: return "tl_diff";
    case WiringKind::Wg: return "wg";
  }
  return "tl_single";
}

void parse_budget(const Cursor& c, BudgetConfig& b) {
  c.reject_unknown({"classes", "carrier_power_w", "max_reach_mm", "reach_is_lower_bound"});
  get_number(c, "carrier_power_w", b.carrier_power_w, 0, 1e6);
  get_number(c, "max_reach_mm", b.max_reach_mm, 0, 1e9);
  get_bool(c, "reach_is_lower_bound", b.reach_is_lower_bound);
  if (!c.has("classes")) return;

  Cursor lc = c.child("classes");
  if (!lc.raw().is_array()) fail(lc.path(), "expected an array");
  std::vector<LinkClass> classes;
  size_t i = 0;
  for (const auto& item : lc.raw()) {
    Cursor ic(item, lc.path() + "[" + std::to_string(i++) + "]");
    ic.reject_unknown({"name", "links", "rate_gbps", "energy_pj_per_bit", "area_mm2_per_link",
                       "micro_bumps", "wiring", "links_per_wire", "counts_bandwidth"});
    LinkClass k;
    if (ic.has("name")) k.name = ic.child("name").text();
    get_int(ic, "links", k.link_count, 1, 1LL << 40);
    // Integer-scaled units; see budget.hpp. Values finer than 1 Mb/s, 1 fJ/b
    // or 1 um^2 are rounded here.
    if (ic.has("rate_gbps"))
      k.rate_mbps = std::llround(ic.child("rate_gbps").number(1e-3, 1e9) * 1000.0);
    if (ic.has("energy_pj_per_bit"))
      k.energy_fj_per_bit = std::llround(ic.child("energy_pj_per_bit").number(1e-3, 1e9) * 1000.0);
    if (ic.has("area_mm2_per_link"))
      k.area_um2_per_link = std::llround(ic.child("area_mm2_per_link").number(0, 1e6) * 1e6);
    get_int(ic, "micro_bumps", k.micro_bumps, 0, 1LL << 40);
    if (ic.has("wiring")) k.wiring = wiring_from_string(ic.child("wiring"));
    get_int(ic, "links_per_wire", k.links_per_wire, 1, 1LL << 20);
    get_bool(ic, "counts_bandwidth", k.counts_bandwidth);
    classes.push_back(std::move(k));
  }
  b.classes = std::move(classes);
}

void parse_allocate(const Cursor& c, AllocateConfig& a) {
  c.reject_unknown({"requests", "hold_slots"});
  get_int(c, "hold_slots", a.hold_slots, 0, 1LL << 40);
  if (!c.has("requests")) return;
  Cursor lc = c.child("requests");
  if (!lc.raw().is_array()) fail(lc.path(), "expected an array");
  size_t i = 0;
  for (const auto& item : lc.raw()) {
    Cursor ic(item, lc.path() + "[" + std::to_string(i++) + "]");
    ic.reject_unknown({"from", "to", "slot", "force_turns", "wg_index"});
    AllocateRequestConfig r;
    if (!ic.has("from") || !ic.has("to")) fail(ic.path(), "requests need 'from' and 'to'");
    r.from = ic.child("from").text();
    r.to = ic.child("to").text();
    get_int(ic, "slot", r.slot, 0, 1LL << 40);
    if (ic.has("force_turns"))
      r.force_turns = static_cast<int>(ic.child("force_turns").integer(0, 2));
    get_int(ic, "wg_index", r.wg_index, 0, 1 << 16);
    a.requests.push_back(std::move(r));
  }
}

}  // namespace

RenderFormat render_format_from_string(const std::string& s) {
  if (s == "table") return RenderFormat::Table;
  if (s == "json") return RenderFormat::Json;
  if (s == "csv") return RenderFormat::Csv;
  throw ConfigError("unknown output format '" + s + "'");
}

std::string to_string(RenderFormat f) {
  switch (f) {
    case RenderFormat::Table: return "table";
    case RenderFormat::Json: return "json";
    case RenderFormat::Csv: return "csv";
  }
  return "table";
}

RunConfig parse_config(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("syntax error: ") + e.what());
  }

  Cursor c(root, "");
  c.reject_unknown({"panel", "loss_model", "route", "material", "photodetector", "carrier_grid",
                    "workload", "sim", "sweep", "budget", "allocate", "output", "seed"});

  RunConfig cfg;
  if (c.has("panel")) parse_panel(c.child("panel"), cfg.panel);
  if (c.has("loss_model")) parse_loss_model(c.child("loss_model"), cfg.loss_model);
  if (c.has("route")) parse_route(c.child("route"), cfg.route);
  if (c.has("material")) parse_material(c.child("material"), cfg.material);
  if (c.has("photodetector")) parse_photodetector(c.child("photodetector"), cfg.photodetector);
  if (c.has("carrier_grid")) parse_carrier_grid(c.child("carrier_grid"), cfg.carrier_grid);
  if (c.has("workload")) parse_workload(c.child("workload"), cfg.workload);
  if (c.has("sim")) parse_sim(c.child("sim"), cfg.sim);
  if (c.has("sweep")) parse_sweep(c.child("sweep"), cfg.sweep);
  if (c.has("budget")) parse_budget(c.child("budget"), cfg.budget);
  if (c.has("allocate")) parse_allocate(c.child("allocate"), cfg.allocate);
  if (c.has("output")) {
    Cursor oc = c.child("output");
    oc.reject_unknown({"format"});
    if (oc.has("format")) {
      try {
        cfg.output_format = render_format_from_string(oc.child("format").text());
      } catch (const ConfigError&) {
        fail(oc.child("format").path(), "unknown output format");
      }
    }
  }
  if (c.has("seed"))
    cfg.seed = static_cast<std::uint64_t>(
        c.child("seed").integer(0, std::numeric_limits<std::int64_t>::max()));
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const RunConfig& cfg) {
  ordered_json j;
  j["panel"] = {{"rows", cfg.panel.rows},
                {"cols", cfg.panel.cols},
                {"wg_per_bundle", cfg.panel.wg_per_bundle},
                {"lambdas_per_wg", cfg.panel.lambdas_per_wg},
                {"tile_template",
                 {{"hbm_stacks", cfg.panel.tile_template.hbm_stacks},
                  {"xpu_links", cfg.panel.tile_template.xpu_links},
                  {"hbm_links_per_stack", cfg.panel.tile_template.hbm_links_per_stack}}}};
  j["loss_model"] = {{"drop_on_db", cfg.loss_model.drop_on_db},
                     {"thru_off_db", cfg.loss_model.thru_off_db},
                     {"thru_on_isolation_db", cfg.loss_model.thru_on_isolation_db},
                     {"drop_off_isolation_db", cfg.loss_model.drop_off_isolation_db}};
  j["route"] = {{"fixed_loss_db", cfg.route.fixed_loss_db},
                {"max_turns", cfg.route.max_turns},
                {"wg_db_per_cm", cfg.route.wg_db_per_cm},
                {"tile_pitch_col_mm", cfg.route.tile_pitch_col_mm},
                {"tile_pitch_row_mm", cfg.route.tile_pitch_row_mm}};
  j["material"] = {{"chi2_m_per_v", cfg.material.chi2},
                   {"chi3_m2_per_v2", cfg.material.chi3},
                   {"base_index", cfg.material.base_index},
                   {"breakdown_field_v_per_m", cfg.material.breakdown_field},
                   {"field_per_volt", cfg.material.field_per_volt}};
  j["photodetector"] = {{"responsivity_a_per_w", cfg.photodetector.responsivity},
                        {"sensitivity_dbm", cfg.photodetector.sensitivity_dbm}};
  j["carrier_grid"] = {{"carrier_count", cfg.carrier_grid.carrier_count},
                       {"spacing_nm", cfg.carrier_grid.spacing_nm},
                       {"center_wavelength_nm", cfg.carrier_grid.center_wavelength_nm},
                       {"power_per_carrier_mw", cfg.carrier_grid.power_per_carrier_mw}};
  j["workload"] = {{"seed", cfg.workload.seed},       {"rate", cfg.workload.rate},
                   {"nearby_fraction", cfg.workload.nearby_fraction},
                   {"xpu_duty", cfg.workload.xpu_duty}, {"slots", cfg.workload.slots},
                   {"size_bits", cfg.workload.size_bits}};
  j["sim"] = {{"slot_seconds", cfg.sim.slot_seconds},
              {"link_rate_gbps", cfg.sim.link_rate_gbps},
              {"drop_blocked", cfg.sim.drop_blocked},
              {"random_order", cfg.sim.random_order},
              {"reconfig_slots", cfg.sim.reconfig_slots}};
  if (!cfg.sweep.xpu_duty.empty() || !cfg.sweep.rate.empty() ||
      !cfg.sweep.wg_per_bundle.empty()) {
    ordered_json sj = ordered_json::object();
    if (!cfg.sweep.xpu_duty.empty()) sj["xpu_duty"] = cfg.sweep.xpu_duty;
    if (!cfg.sweep.rate.empty()) sj["rate"] = cfg.sweep.rate;
    if (!cfg.sweep.wg_per_bundle.empty()) sj["wg_per_bundle"] = cfg.sweep.wg_per_bundle;
    j["sweep"] = sj;
  }
  {
    ordered_json bj = ordered_json::object();
    bj["carrier_power_w"] = cfg.budget.carrier_power_w;
    bj["max_reach_mm"] = cfg.budget.max_reach_mm;
    bj["reach_is_lower_bound"] = cfg.budget.reach_is_lower_bound;
    if (cfg.budget.classes) {
      ordered_json arr = ordered_json::array();
      for (const LinkClass& k : *cfg.budget.classes) {
        arr.push_back({{"name", k.name},
                       {"links", k.link_count},
                       {"rate_gbps", static_cast<double>(k.rate_mbps) / 1000.0},
                       {"energy_pj_per_bit", static_cast<double>(k.energy_fj_per_bit) / 1000.0},
                       {"area_mm2_per_link", static_cast<double>(k.area_um2_per_link) / 1e6},
                       {"micro_bumps", k.micro_bumps},
                       {"wiring", wiring_to_string(k.wiring)},
                       {"links_per_wire", k.links_per_wire},
                       {"counts_bandwidth", k.counts_bandwidth}});
      }
      bj["classes"] = arr;
    }
    j["budget"] = bj;
  }
  if (!cfg.allocate.requests.empty() || cfg.allocate.hold_slots != 0) {
    ordered_json aj = ordered_json::object();
    aj["hold_slots"] = cfg.allocate.hold_slots;
    ordered_json arr = ordered_json::array();
    for (const auto& r : cfg.allocate.requests) {
      ordered_json rj = {{"from", r.from}, {"to", r.to}, {"slot", r.slot}};
      if (r.force_turns) rj["force_turns"] = *r.force_turns;
      if (r.wg_index != 0) rj["wg_index"] = r.wg_index;
      arr.push_back(rj);
    }
    aj["requests"] = arr;
    j["allocate"] = aj;
  }
  j["output"] = {{"format", to_string(cfg.output_format)}};
  if (cfg.seed) j["seed"] = *cfg.seed;
  return j.dump(2) + "\n";
}

WorkloadParams effective_workload(const RunConfig& cfg) {
  WorkloadParams w = cfg.workload;
  if (cfg.seed) w.seed = *cfg.seed;
  return w;
}

SimConfig make_sim_config(const RunConfig& cfg) {
  SimConfig sc;
  sc.slot_seconds = cfg.sim.slot_seconds;
  sc.link_rate_gbps = cfg.sim.link_rate_gbps;
  sc.loss_model = cfg.loss_model;
  sc.fixed_loss_db = cfg.route.fixed_loss_db;
  sc.pd = cfg.photodetector;
  sc.carrier_power_per_lambda_w = cfg.carrier_grid.power_per_carrier_mw * 1e-3;
  sc.drop_blocked = cfg.sim.drop_blocked;
  sc.random_order = cfg.sim.random_order;
  sc.reconfig_slots = cfg.sim.reconfig_slots;
  sc.max_turns = cfg.route.max_turns;
  return sc;
}

WdmCarrierGrid make_carrier_grid(const RunConfig& cfg) {
  WdmCarrierGrid g;
  g.carrier_count = cfg.carrier_grid.carrier_count;
  g.spacing = cfg.carrier_grid.spacing_nm * 1e-9;
  g.center_wavelength = cfg.carrier_grid.center_wavelength_nm * 1e-9;
  g.power_per_carrier = cfg.carrier_grid.power_per_carrier_mw * 1e-3;
  return g;
}

}  // namespace pfab
