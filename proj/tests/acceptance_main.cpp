// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion carries its tolerance and a wall-clock budget.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pfab/allocator.hpp"
#include "pfab/budget.hpp"
#include "pfab/devices.hpp"
#include "pfab/errors.hpp"
#include "pfab/planner.hpp"
#include "pfab/render.hpp"
#include "pfab/traffic.hpp"
#include "pfab/units.hpp"

using namespace pfab;

namespace {

struct Checker {
  std::ostringstream log;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << (log.str().empty() ? "" : "; ") << what;
    }
  }
  void near(double value, double target, double tol, const std::string& what) {
    if (!(std::abs(value - target) <= tol)) {
      ok = false;
      log << (log.str().empty() ? "" : "; ") << what << " = " << value << " (want "
          << target << " +- " << tol << ")";
    }
  }
};

std::string xpu(int row, int col) {
  return "XPU_" + std::to_string(row) + "_" + std::to_string(col);
}

// Runs `budget --preset <name> --json` through the real CLI when available,
// otherwise through the library.
LinkBudgetReport budget_via_cli(const std::string& name, bool& used_cli) {
  if (const char* cli = std::getenv("PFAB_CLI_PATH")) {
    const std::string cmd = std::string(cli) + " budget --preset " + name + " --json";
    if (FILE* pipe = popen(cmd.c_str(), "r")) {
      std::string out;
      std::array<char, 4096> buf;
      size_t n;
      while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
      if (pclose(pipe) == 0) {
        used_cli = true;
        return budget_report_from_json(out);
      }
    }
  }
  used_cli = false;
  Preset p = preset(preset_from_string(name));
  return analyze(p.classes, p.carrier_power_w, p.max_reach_mm, p.reach_is_lower_bound);
}

void criterion_silicon(Checker& c) {
  bool used_cli = false;
  LinkBudgetReport r = budget_via_cli("silicon", used_cli);
  c.near(r.total_bandwidth_tbps, 13.312, 0.005, "bandwidth_tbps");
  c.near(r.total_power_w, 18.391, 0.005, "power_w");
  c.near(r.total_area_mm2, 22.224, 0.005, "area_mm2");
  c.near(r.energy_pj_per_bit, 1.38, 0.005, "energy_pj_per_bit");
  c.near(r.bw_density_tbps_mm2, 0.60, 0.005, "bw_density");
  c.near(r.power_density_w_mm2, 0.83, 0.005, "power_density");
  c.expect(r.total_bumps == 832, "bumps != 832");
  c.expect(r.total_wires == 736, "TLs != 736");
  c.expect(used_cli, "CLI binary not exercised (PFAB_CLI_PATH unset)");
}

void criterion_photonic(Checker& c) {
  bool used_cli = false;
  LinkBudgetReport r = budget_via_cli("photonic", used_cli);
  c.near(r.total_bandwidth_tbps, 26.624, 0.005, "bandwidth_tbps");
  c.near(r.total_power_w, 31.033, 0.005, "power_w");
  c.near(r.carrier_power_w, 0.416, 0.0005, "carrier_power_w");
  c.near(r.total_area_mm2, 33.28, 0.005, "area_mm2");
  c.near(r.energy_pj_per_bit, 1.17, 0.005, "energy_pj_per_bit");
  c.near(r.bw_density_tbps_mm2, 0.80, 0.005, "bw_density");
  c.near(r.power_density_w_mm2, 0.93, 0.005, "power_density");
  c.expect(r.total_bumps == 832, "bumps != 832");
  c.expect(r.total_wires == 26, "WGs != 26");
  c.expect(used_cli, "CLI binary not exercised (PFAB_CLI_PATH unset)");
}

void criterion_worst_case(Checker& c) {
  PanelTopology panel = PanelTopology::build(8, 8);
  PlanOptions opts;
  opts.force_turns = 2;
  Route route = plan(panel, xpu(0, 0), xpu(7, 7), opts);
  LossBudget b = loss_budget(route);
  c.expect(b.n_bypass == 12, "bypasses != 12");
  c.expect(b.n_turn == 2, "turns != 2");
  c.near(b.total_loss_db, 7.0, 1e-9, "total_loss_db");
  c.near(b.required_carrier_dbm, -3.01, 0.02, "required_carrier_dbm");
  c.near(b.required_carrier_mw, 0.500, 0.005, "required_carrier_mw");
}

void criterion_brown_path(Checker& c) {
  PanelTopology panel = PanelTopology::build(8, 8);
  PlanOptions opts;
  opts.force_turns = 2;
  Route route = plan(panel, xpu(0, 0), xpu(1, 2), opts);
  LossBudget b = loss_budget(route, {}, 0.0);
  c.expect(b.n_bypass == 1, "bypasses != 1");
  c.expect(b.n_turn == 2, "turns != 2");
  c.near(b.switch_loss_db, 1.25, 1e-12, "switch_loss_db");
}

void criterion_coverage(Checker& c) {
  auto a = coverage_set(Placement::ASouthwest);
  auto b = coverage_set(Placement::BNorthwest);
  std::set<PathId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  c.expect(sa.size() == 8, "|cov(A)| != 8");
  c.expect(sb.size() == 8, "|cov(B)| != 8");
  std::set<PathId> u = sa;
  u.insert(sb.begin(), sb.end());
  c.expect(u.size() == 12, "|union| != 12");

  const Direction dirs[] = {Direction::North, Direction::South, Direction::East,
                            Direction::West};
  int realized = 0;
  for (Direction in : dirs) {
    for (Direction out : dirs) {
      if (in == out) continue;
      XbarNodeState state;
      if (out != opposite(in)) {
        auto owner = turn_owner(in, out);
        if (!owner) {
          c.expect(false, "no resonator covers a turn");
          continue;
        }
        (*owner == Placement::ASouthwest ? state.resonator_a_on : state.resonator_b_on) =
            true;
      }
      ResolveResult r = resolve(state, in);
      c.expect(r.out == out, "path not realized");
      c.expect(r.out != in, "resolve echoed its input");
      ++realized;
    }
  }
  c.expect(realized == 12, "not all 12 pairs exercised");
}

void criterion_calibration(Checker& c) {
  SwitchLossModel targets;
  AddDropResonator r = calibrate_switch(targets, 100e9);

  const double lam_on = nearest_resonance(r, 1550e-9);
  const double ngl = r.group_index * r.round_trip_length;
  const double m = std::round(ngl / lam_on);
  const double lam_off = ngl / (m + 0.5);

  TransferPoint on = transfer(r, lam_on);
  TransferPoint off = transfer(r, lam_off);
  c.near(linear_to_db(on.drop_power), -0.5, 0.05, "on-resonance drop dB");
  c.expect(linear_to_db(on.thru_power) <= -24.0, "on-resonance thru above -24 dB");
  c.expect(linear_to_db(off.thru_power) >= -0.30, "off-resonance thru below -0.30 dB");
  c.expect(linear_to_db(off.drop_power) <= -15.0, "off-resonance drop above -15 dB");

  FsrResult f = fsr(r, 1550e-9);
  c.expect(std::abs(f.fsr_frequency - 100e9) / 100e9 <= 0.01, "FSR off by > 1%");

  // Independent dense sweep over (t, a) with the same level targets.
  auto drop_at = [](double t, double a, double ct) {
    const double d = 1 - 2 * t * t * a * ct + t * t * t * t * a * a;
    return (1 - t * t) * (1 - t * t) * a / d;
  };
  auto thru_at = [](double t, double a, double ct) {
    const double d = 1 - 2 * t * t * a * ct + t * t * t * t * a * a;
    return (t * t * a * a - 2 * t * t * a * ct + t * t) / d;
  };
  bool oracle_feasible = false;
  bool result_in_oracle = false;
  for (double t = 0.5; t < 0.999; t += 0.001) {
    for (double a = 0.9; a < 0.9999; a += 0.0001) {
      const bool ok = std::abs(linear_to_db(drop_at(t, a, 1.0)) + 0.5) <= 0.05 &&
                      linear_to_db(thru_at(t, a, 1.0)) <= -24.0 &&
                      linear_to_db(thru_at(t, a, -1.0)) >= -0.30 &&
                      linear_to_db(drop_at(t, a, -1.0)) <= -15.0;
      if (ok) {
        oracle_feasible = true;
        if (std::abs(t - r.self_coupling_in) <= 0.002 &&
            std::abs(a - r.round_trip_amplitude) <= 0.0002)
          result_in_oracle = true;
      }
    }
  }
  c.expect(oracle_feasible, "sweep oracle found no feasible design");
  c.expect(result_in_oracle, "calibrated design not inside the oracle's feasible set");
}

void criterion_passivity(Checker& c) {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> coupling(0.05, 0.95), amp(0.9, 1.0);
  for (int i = 0; i < 1000; ++i) {
    AddDropResonator r;
    r.self_coupling_in = coupling(rng);
    r.self_coupling_drop = coupling(rng);
    r.round_trip_amplitude = (i % 4 == 0) ? 1.0 : amp(rng);
    r.group_index = 3.59;
    r.round_trip_length = 2.99792458e-3 / r.group_index;

    const double fsr_lam = fsr(r, 1550e-9).fsr_wavelength;
    for (int k = 0; k <= 60; ++k) {
      const double lam = 1550e-9 + fsr_lam * k / 60.0;
      TransferPoint tp = transfer(r, lam);
      if (tp.thru_power + tp.drop_power > 1.0 + 1e-12) {
        c.expect(false, "thru + drop exceeded 1");
        return;
      }
      if (r.round_trip_amplitude == 1.0 &&
          std::abs(tp.thru_power + tp.drop_power - 1.0) > 1e-9) {
        c.expect(false, "lossless ring not energy-conserving within 1e-9");
        return;
      }
    }
  }
}

void criterion_delta_n(Checker& c) {
  SrnMaterial mat;

  SrnMaterial chi2_only = mat;
  chi2_only.chi3 = 0.0;
  DeltaNTerms collapsed = delta_n_terms(chi2_only, 5e7, 2e5);
  c.expect(collapsed.dn_ac == collapsed.ac_chi2, "chi3 = 0 did not collapse dn_ac exactly");

  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dc(1e6, 9.9e7), ac(1e3, 1e6);
  for (int i = 0; i < 500; ++i) {
    const double e_dc = dc(rng), e_ac = ac(rng);
    DeltaNTerms t = delta_n_terms(mat, e_dc, e_ac);
    const double want = 2 * e_dc / e_ac;
    if (std::abs(t.mixed / t.ac_chi3 - want) / want > 1e-12) {
      c.expect(false, "heterodyne ratio not 2 E_dc / E_ac");
      break;
    }
  }

  const double e_dc = 1e8;
  const double slope = (mat.chi2 + 3 * mat.chi3 * e_dc) / mat.base_index;
  for (double e_ac : {1e2, 1e3, 1e4, 1e5}) {
    DeltaNTerms t = delta_n_terms(mat, e_dc, e_ac);
    if (std::abs(t.dn_ac - slope * e_ac) / std::abs(t.dn_ac) >= 1e-3) {
      c.expect(false, "dn_ac deviates from linearity by >= 0.1%");
      break;
    }
  }

  c.near(dc_field_from_voltage(mat, 5.0), 1.5e6, 1.0, "field at 5 V");
  c.near(breakdown_voltage(mat), 333.0, 5.0, "breakdown voltage");
  bool threw = false;
  try {
    delta_n_terms(mat, 2e8, 0.0);
  } catch (const InvalidStateError&) {
    threw = true;
  }
  c.expect(threw, "field above breakdown not rejected");
}

void criterion_planner_oracle(Checker& c) {
  std::mt19937 rng(4242);
  int cases = 0;
  while (cases < 500) {
    const int rows = 1 + static_cast<int>(rng() % 20);
    const int cols = 1 + static_cast<int>(rng() % 20);
    PanelTopology panel = PanelTopology::build(rows, cols);
    const int r1 = static_cast<int>(rng() % rows), c1 = static_cast<int>(rng() % cols);
    const int r2 = static_cast<int>(rng() % rows), c2 = static_cast<int>(rng() % cols);
    if (r1 == r2 && c1 == c2) continue;

    Route best = plan(panel, xpu(r1, c1), xpu(r2, c2));
    auto all = enumerate_routes(panel, xpu(r1, c1), xpu(r2, c2));
    if (all.empty()) {
      c.expect(false, "oracle produced no routes");
      return;
    }
    double min_loss = std::numeric_limits<double>::infinity();
    int min_turns = 1 << 20;
    SwitchLossModel lm;
    for (const Route& r : all) {
      const double loss = r.bypass_count() * lm.thru_off_db + r.turn_count() * lm.drop_on_db;
      min_loss = std::min(min_loss, loss);
      min_turns = std::min(min_turns, r.turn_count());
    }
    const double best_loss =
        best.bypass_count() * lm.thru_off_db + best.turn_count() * lm.drop_on_db;
    if (std::abs(best_loss - min_loss) > 1e-12 || best.turn_count() != min_turns) {
      c.expect(false, "plan(MIN_LOSS) missed the oracle optimum");
      return;
    }
    ++cases;
  }
}

void criterion_allocator_safety(Checker& c) {
  PanelSpec spec;
  spec.rows = 4;
  spec.cols = 4;
  spec.wg_per_bundle = 3;
  PanelTopology panel = PanelTopology::build(spec);

  std::vector<Route> pool;
  std::mt19937 rng(99);
  for (int i = 0; i < 60; ++i) {
    const int r1 = static_cast<int>(rng() % 4), c1 = static_cast<int>(rng() % 4);
    int r2 = static_cast<int>(rng() % 4), c2 = static_cast<int>(rng() % 4);
    if (r1 == r2 && c1 == c2) c2 = (c2 + 1) % 4;
    PlanOptions opts;
    opts.wg_index = static_cast<int>(rng() % 3);
    pool.push_back(plan(panel, xpu(r1, c1), xpu(r2, c2), opts));
  }

  SlotAllocation alloc(&panel, 0);
  std::vector<Route> live;
  std::multiset<SegmentClaim> segments;
  std::multiset<XbarNodeId> nodes;
  for (long op = 0; op < 100000; ++op) {
    if (live.empty() || rng() % 2 == 0) {
      const Route& r = pool[rng() % pool.size()];
      if (alloc.try_add(r).empty()) {
        live.push_back(r);
        for (const auto& s : r.claimed_segments) {
          if (segments.count(s)) {
            c.expect(false, "segment double-claimed");
            return;
          }
          segments.insert(s);
        }
        for (const auto& n : r.claimed_nodes) {
          if (nodes.count(n)) {
            c.expect(false, "node double-claimed");
            return;
          }
          nodes.insert(n);
        }
      }
    } else {
      const size_t pick = rng() % live.size();
      for (const auto& s : live[pick].claimed_segments) segments.erase(segments.find(s));
      for (const auto& n : live[pick].claimed_nodes) nodes.erase(nodes.find(n));
      alloc.remove(live[pick]);
      live.erase(live.begin() + static_cast<long>(pick));
    }
    if (op % 2000 == 0) {
      if (auto err = validate_allocation(alloc, panel)) {
        c.expect(false, "validator: " + *err);
        return;
      }
    }
  }
  if (auto err = validate_allocation(alloc, panel)) c.expect(false, "validator: " + *err);

  // Tri-party concurrency on disjoint resources.
  PanelTopology tri = PanelTopology::build(3, 3);
  SlotAllocation tri_alloc(&tri, 0);
  c.expect(tri_alloc.try_add(plan(tri, xpu(1, 1), xpu(2, 1))).empty(),
           "tri-party TX route denied");
  c.expect(tri_alloc.try_add(plan(tri, xpu(1, 0), xpu(1, 1))).empty(),
           "tri-party RX route denied");

  // Brown/pink overlap: denied with a nonempty clash list.
  SlotAllocation bp(&tri, 0);
  PlanOptions z;
  z.force_turns = 2;
  c.expect(bp.try_add(plan(tri, xpu(0, 0), xpu(2, 2), z)).empty(), "brown route denied");
  ConflictReport rep = bp.try_add(plan(tri, xpu(2, 0), xpu(2, 2)));
  c.expect(!rep.empty(), "pink overlap not detected");
}

void criterion_simulator(Checker& c) {
  PanelSpec spec;
  spec.rows = 3;
  spec.cols = 3;
  spec.wg_per_bundle = 2;
  PanelTopology panel = PanelTopology::build(spec);

  WorkloadParams p;
  p.seed = 515;
  p.rate = 1.5;
  p.xpu_duty = 0.9;
  p.nearby_fraction = 0.3;
  p.slots = 5000;

  // Conservation is asserted inside run() at every slot boundary; a
  // violation throws.
  Workload wl = generate(panel, p);
  SimReport a;
  try {
    a = run(panel, wl);
  } catch (const Error& e) {
    c.expect(false, std::string("conservation: ") + e.what());
    return;
  }
  SimReport b = run(panel, generate(panel, p));
  c.expect(a == b, "identical seeds gave different reports");
  c.expect(a.bits_delivered <= a.offered_bits, "delivered more than offered");

  SimConfig cfg;
  const double cap = panel.lambdas_per_wg() * cfg.link_rate_gbps * 1e9 * cfg.slot_seconds;
  c.expect(static_cast<double>(a.max_route_bits_per_slot) <= cap + 0.5,
           "per-WG delivery above 1.024 Tb/s");

  SweepGrid grid;
  grid.wg_per_bundle = {1, 4, 26};
  auto rows = sweep(spec, p, cfg, grid);
  c.expect(rows.size() == 3, "sweep row count");
  c.expect(rows[0].report.blocking_probability >= rows[1].report.blocking_probability &&
               rows[1].report.blocking_probability >= rows[2].report.blocking_probability,
           "blocking not monotone in wg_per_bundle");
}

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<void(Checker&)> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Table 1 silicon reproduction", 1.0, criterion_silicon},
      {2, "Table 1 photonic reproduction", 1.0, criterion_photonic},
      {3, "worst-case 8x8 budget: 12 bypass + 2 turns, 7 dB, -3 dBm", 1.0,
       criterion_worst_case},
      {4, "brown path: 1 bypass + 2 turns = 1.25 dB", 1.0, criterion_brown_path},
      {5, "switch coverage 8/8/12 and full 12-path reachability", 1.0, criterion_coverage},
      {6, "resonator calibration against the sweep oracle", 10.0, criterion_calibration},
      {7, "passivity and lossless energy conservation (1000 resonators)", 10.0,
       criterion_passivity},
      {8, "nonlinear index terms: collapse, heterodyne ratio, linearity, field model", 5.0,
       criterion_delta_n},
      {9, "planner matches the exhaustive oracle (500 cases up to 20x20)", 30.0,
       criterion_planner_oracle},
      {10, "allocator safety over 1e5 randomized ops + scenario checks", 60.0,
       criterion_allocator_safety},
      {11, "simulator conservation, determinism, rate cap, width monotonicity", 60.0,
       criterion_simulator},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    Checker chk;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.fn(chk);
    } catch (const std::exception& e) {
      chk.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.budget_seconds)
      chk.expect(false, "runtime " + std::to_string(secs) + " s over budget");
    std::printf("[%s] criterion %2d (%6.2f s): %s%s%s\n", chk.ok ? "PASS" : "FAIL",
                cr.number, secs, cr.name.c_str(), chk.ok ? "" : " -- ",
                chk.ok ? "" : chk.log.str().c_str());
    if (!chk.ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
