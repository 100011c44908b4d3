#include <string>

#include "doctest.h"
#include "pfab/budget.hpp"
#include "pfab/config.hpp"
#include "pfab/errors.hpp"
#include "pfab/render.hpp"

using namespace pfab;

TEST_CASE("minimal config applies defaults everywhere else") {
  RunConfig cfg = parse_config(R"({"panel":{"rows":1,"cols":1}})");
  CHECK(cfg.panel.rows == 1);
  CHECK(cfg.panel.cols == 1);
  CHECK(cfg.panel.wg_per_bundle == 26);
  CHECK(cfg.panel.lambdas_per_wg == 32);
  CHECK(cfg.loss_model == SwitchLossModel{});
  CHECK(cfg.route.fixed_loss_db == 3.0);
  CHECK(cfg.route.max_turns == 2);
  CHECK(cfg.carrier_grid == CarrierGridConfig{});
  CHECK(cfg.output_format == RenderFormat::Table);
  CHECK(!cfg.seed.has_value());
}

TEST_CASE("out-of-range values are rejected with their path") {
  try {
    parse_config(R"({"panel":{"rows":0,"cols":4}})");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("panel.rows") != std::string::npos);
    CHECK(std::string(e.what()).find("out of range") != std::string::npos);
  }

  try {
    parse_config(R"({"workload":{"xpu_duty":0.95}})");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("workload.xpu_duty") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected with their path") {
  try {
    parse_config(R"({"panel":{"rows":1,"cols":1,"wg":26}})");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
    CHECK(std::string(e.what()).find("panel.wg") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"panle":{}})"), ConfigError);
}

TEST_CASE("syntax errors are distinct from validation errors") {
  try {
    parse_config("{not json");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("syntax error") != std::string::npos);
  }
}

TEST_CASE("wrong value types are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"panel":{"rows":"one"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"panel":{"rows":1.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sim":{"drop_blocked":1}})"), ConfigError);
}

TEST_CASE("full photonic budget config reproduces the preset") {
  const std::string text = R"({
    "budget": {
      "carrier_power_w": 0.416,
      "max_reach_mm": 500,
      "reach_is_lower_bound": true,
      "classes": [
        {"name": "Nearby WDM", "links": 384, "rate_gbps": 32,
         "energy_pj_per_bit": 1.15, "area_mm2_per_link": 0.04,
         "micro_bumps": 384, "wiring": "wg", "links_per_wire": 32},
        {"name": "Far-off WDM", "links": 448, "rate_gbps": 32,
         "energy_pj_per_bit": 1.15, "area_mm2_per_link": 0.04,
         "micro_bumps": 448, "wiring": "wg", "links_per_wire": 32}
      ]
    }
  })";
  RunConfig cfg = parse_config(text);
  REQUIRE(cfg.budget.classes.has_value());

  Preset ph = preset(PresetName::PhotonicUnit);
  REQUIRE(cfg.budget.classes->size() == ph.classes.size());
  for (size_t i = 0; i < ph.classes.size(); ++i)
    CHECK((*cfg.budget.classes)[i] == ph.classes[i]);

  LinkBudgetReport from_config = analyze(*cfg.budget.classes, cfg.budget.carrier_power_w,
                                         cfg.budget.max_reach_mm,
                                         cfg.budget.reach_is_lower_bound);
  LinkBudgetReport from_preset =
      analyze(ph.classes, ph.carrier_power_w, ph.max_reach_mm, ph.reach_is_lower_bound);
  CHECK(from_config == from_preset);
}

TEST_CASE("parse-dump-parse round trip is lossless") {
  const std::string text = R"({
    "panel": {"rows": 3, "cols": 5, "wg_per_bundle": 7,
              "tile_template": {"hbm_stacks": 6}},
    "loss_model": {"drop_on_db": 0.6, "thru_off_db": 0.2},
    "route": {"fixed_loss_db": 2.5, "max_turns": 3, "wg_db_per_cm": 0.01},
    "material": {"chi3_m2_per_v2": 1.26e-18},
    "carrier_grid": {"spacing_nm": 1.0, "power_per_carrier_mw": 0.7},
    "workload": {"seed": 99, "rate": 1.25, "xpu_duty": 0.6, "slots": 1234},
    "sim": {"slot_seconds": 2e-6, "random_order": true},
    "sweep": {"wg_per_bundle": [1, 26]},
    "allocate": {"hold_slots": 2,
                 "requests": [{"from": "XPU_0_0", "to": "XPU_2_4", "force_turns": 2}]},
    "budget": {"classes": [{"name": "x", "links": 2, "rate_gbps": 10,
                            "energy_pj_per_bit": 1.5, "area_mm2_per_link": 0.01,
                            "micro_bumps": 2, "wiring": "tl_diff"}]},
    "output": {"format": "json"},
    "seed": 77
  })";
  RunConfig first = parse_config(text);
  RunConfig second = parse_config(dump_config(first));
  CHECK(first == second);
  CHECK(dump_config(first) == dump_config(second));

  CHECK(effective_workload(first).seed == 77);
  RunConfig no_seed = first;
  no_seed.seed.reset();
  CHECK(effective_workload(no_seed).seed == 99);
}

TEST_CASE("defaults round trip too") {
  RunConfig def;
  CHECK(parse_config(dump_config(def)) == def);
}

TEST_CASE("budget table render carries the summary labels") {
  Preset ph = preset(PresetName::PhotonicUnit);
  LinkBudgetReport r =
      analyze(ph.classes, ph.carrier_power_w, ph.max_reach_mm, ph.reach_is_lower_bound);
  std::string table = render_budget(r, RenderFormat::Table, "photonic unit-interposer");
  CHECK(table.find("Energy efficiency of data links (pJ/b): 1.17") != std::string::npos);
  CHECK(table.find("Total # of WGs for data links: 26") != std::string::npos);
  CHECK(table.find("Total data bandwidth per XPU (Tb/s): 26.624") != std::string::npos);
  CHECK(table.find("Maximum far-off interconnect distance (mm): > 500") != std::string::npos);

  Preset si = preset(PresetName::SiliconUnit);
  LinkBudgetReport rs =
      analyze(si.classes, si.carrier_power_w, si.max_reach_mm, si.reach_is_lower_bound);
  std::string table_si = render_budget(rs, RenderFormat::Table);
  CHECK(table_si.find("Total # of TLs for data links: 736") != std::string::npos);
  CHECK(table_si.find("Energy efficiency of data links (pJ/b): 1.38") != std::string::npos);
}

TEST_CASE("json render round-trips the budget report") {
  Preset ph = preset(PresetName::PhotonicUnit);
  LinkBudgetReport r =
      analyze(ph.classes, ph.carrier_power_w, ph.max_reach_mm, ph.reach_is_lower_bound);
  std::string once = render_budget(r, RenderFormat::Json);
  LinkBudgetReport back = budget_report_from_json(once);
  CHECK(back == r);
  CHECK(render_budget(back, RenderFormat::Json) == once);
}

TEST_CASE("empty sim report renders as header plus a zero row") {
  SimReport zero;
  std::string csv = render_sim(zero, RenderFormat::Csv);
  const size_t newline = csv.find('\n');
  REQUIRE(newline != std::string::npos);
  CHECK(csv.substr(0, 9) == "slots_run");
  const std::string data_row = csv.substr(newline + 1);
  CHECK(data_row.find("0,0,0,0,0,0,0,") == 0);
  CHECK(csv.back() == '\n');

  SimReport back = sim_report_from_json(render_sim(zero, RenderFormat::Json));
  CHECK(back == zero);
}

TEST_CASE("renders are byte-stable") {
  Preset si = preset(PresetName::SiliconUnit);
  LinkBudgetReport r =
      analyze(si.classes, si.carrier_power_w, si.max_reach_mm, si.reach_is_lower_bound);
  for (RenderFormat f : {RenderFormat::Table, RenderFormat::Json, RenderFormat::Csv})
    CHECK(render_budget(r, f) == render_budget(r, f));
}
