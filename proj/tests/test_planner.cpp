#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "pfab/errors.hpp"
#include "pfab/planner.hpp"
#include "pfab/units.hpp"

using namespace pfab;

namespace {

std::string xpu(int row, int col) {
  return "XPU_" + std::to_string(row) + "_" + std::to_string(col);
}

double route_loss(const Route& r, const SwitchLossModel& lm = {}) {
  return r.bypass_count() * lm.thru_off_db + r.turn_count() * lm.drop_on_db;
}

}  // namespace

TEST_CASE("straight routes have no turns") {
  PanelTopology panel = PanelTopology::build(8, 8);
  Route r = plan(panel, xpu(3, 1), xpu(3, 6));
  CHECK(r.turn_count() == 0);
  CHECK(r.bypass_count() == 5);
  CHECK(r.interactions.size() == 5);
}

TEST_CASE("min-loss corner-to-corner route is an L with one turn") {
  PanelTopology panel = PanelTopology::build(8, 8);
  Route r = plan(panel, xpu(0, 0), xpu(7, 7));
  CHECK(r.turn_count() == 1);
  CHECK(r.bypass_count() == 13);
  CHECK(r.interactions.size() == 14);
}

TEST_CASE("forced two-turn corner route matches the worst-case pattern") {
  PanelTopology panel = PanelTopology::build(8, 8);
  PlanOptions opts;
  opts.force_turns = 2;
  Route r = plan(panel, xpu(0, 0), xpu(7, 7), opts);
  CHECK(r.turn_count() == 2);
  CHECK(r.bypass_count() == 12);
  CHECK(r.interactions.size() == 14);
}

TEST_CASE("degenerate and unroutable requests are rejected") {
  PanelTopology panel = PanelTopology::build(4, 4);
  CHECK_THROWS_AS(plan(panel, xpu(0, 0), xpu(0, 0)), InfeasibleError);
  CHECK_THROWS_AS(plan(panel, xpu(0, 0), "nope"), NotFoundError);

  PlanOptions cut;
  cut.blocked_tiles = {{0, 1}, {1, 0}, {1, 1}};  // isolates the corner
  CHECK_THROWS_AS(plan(panel, xpu(0, 0), xpu(3, 3), cut), InfeasibleError);

  PlanOptions forced;
  forced.force_turns = 2;  // impossible on a collinear pair
  CHECK_THROWS_AS(plan(panel, xpu(0, 0), xpu(0, 3), forced), InfeasibleError);
}

TEST_CASE("blocked tiles push the planner onto a detour within the turn budget") {
  PanelTopology panel = PanelTopology::build(4, 4);
  PlanOptions opts;
  opts.blocked_tiles = {{0, 3}, {3, 0}};  // both L corners
  Route r = plan(panel, xpu(0, 0), xpu(3, 3), opts);
  CHECK(r.turn_count() == 2);
  CHECK(r.interactions.size() == 6);
}

TEST_CASE("enumerate_routes is exhaustive and deterministic") {
  PanelTopology panel = PanelTopology::build(8, 8);

  auto same_row = enumerate_routes(panel, xpu(2, 1), xpu(2, 5));
  CHECK(same_row.size() == 1);  // no monotone alternative exists
  CHECK(same_row[0].turn_count() == 0);

  auto adjacent = enumerate_routes(panel, xpu(4, 4), xpu(4, 5));
  REQUIRE(adjacent.size() == 1);
  CHECK(adjacent[0].interactions.size() == 1);

  auto corner = enumerate_routes(panel, xpu(0, 0), xpu(1, 1), 1);
  CHECK(corner.size() == 2);  // the two L orientations

  // 0 turns impossible, 1 turn: 2 routes, 2 turns: (dr-1)+(dc-1) routes.
  auto all2 = enumerate_routes(panel, xpu(0, 0), xpu(3, 4), 2);
  CHECK(all2.size() == 2 + 2 + 3);
  CHECK(enumerate_routes(panel, xpu(0, 0), xpu(3, 4), 2) == all2);

  PanelTopology big = PanelTopology::build(21, 21);
  CHECK_THROWS_AS(enumerate_routes(big, xpu(0, 0), xpu(1, 1)), SizeError);
}

TEST_CASE("planner matches the exhaustive oracle on random panels") {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 12);
    const int cols = 1 + static_cast<int>(rng() % 12);
    PanelTopology panel = PanelTopology::build(rows, cols);
    const int r1 = static_cast<int>(rng() % rows), c1 = static_cast<int>(rng() % cols);
    int r2 = static_cast<int>(rng() % rows), c2 = static_cast<int>(rng() % cols);
    if (r1 == r2 && c1 == c2) c2 = (c2 + 1) % cols;
    if (r1 == r2 && c1 == c2) continue;  // 1x1 panel

    Route best = plan(panel, xpu(r1, c1), xpu(r2, c2));
    auto all = enumerate_routes(panel, xpu(r1, c1), xpu(r2, c2));
    REQUIRE(!all.empty());
    double min_loss = std::numeric_limits<double>::infinity();
    int min_turns = 1 << 20;
    for (const Route& r : all) {
      min_loss = std::min(min_loss, route_loss(r));
      min_turns = std::min(min_turns, r.turn_count());
    }
    CHECK(route_loss(best) == doctest::Approx(min_loss).epsilon(1e-12));
    CHECK(best.turn_count() == min_turns);
  }
}

TEST_CASE("interaction count always equals the Manhattan distance") {
  PanelTopology panel = PanelTopology::build(9, 9);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int r1 = static_cast<int>(rng() % 9), c1 = static_cast<int>(rng() % 9);
    int r2 = static_cast<int>(rng() % 9), c2 = static_cast<int>(rng() % 9);
    if (r1 == r2 && c1 == c2) continue;
    Route r = plan(panel, xpu(r1, c1), xpu(r2, c2));
    CHECK(static_cast<int>(r.interactions.size()) ==
          panel.manhattan_hops({r1, c1}, {r2, c2}));
    CHECK(r.bypass_count() + r.turn_count() == panel.manhattan_hops({r1, c1}, {r2, c2}));
    CHECK(r.turn_count() <= 2);
  }
}

TEST_CASE("a turn costs 0.25 dB over a bypass at equal hop count") {
  PanelTopology panel = PanelTopology::build(8, 8);
  Route l_route = plan(panel, xpu(0, 0), xpu(7, 7));
  PlanOptions opts;
  opts.force_turns = 2;
  Route z_route = plan(panel, xpu(0, 0), xpu(7, 7), opts);
  CHECK(route_loss(z_route) - route_loss(l_route) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("loss budget closed forms") {
  PanelTopology panel = PanelTopology::build(8, 8);

  // 1 bypass + 2 turns, switch losses only.
  PlanOptions opts;
  opts.force_turns = 2;
  Route brown = plan(panel, xpu(0, 0), xpu(1, 2), opts);
  REQUIRE(brown.turn_count() == 2);
  REQUIRE(brown.bypass_count() == 1);
  LossBudget b = loss_budget(brown, {}, 0.0);
  CHECK(b.switch_loss_db == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(b.total_loss_db == doctest::Approx(1.25).epsilon(1e-12));

  // Worst case on the 8x8 panel: 12 bypasses + 2 turns + 3 dB fixed.
  Route worst = plan(panel, xpu(0, 0), xpu(7, 7), opts);
  LossBudget w = loss_budget(worst);
  CHECK(w.n_bypass == 12);
  CHECK(w.n_turn == 2);
  CHECK(w.total_loss_db == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(w.required_carrier_dbm == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(w.required_carrier_mw == doctest::Approx(0.5).epsilon(0.01));

  // Same-tile route: fixed loss only.
  Route local = plan(panel, xpu(3, 3), "HBM_3_3_0");
  LossBudget n0 = loss_budget(local);
  CHECK(n0.n_bypass + n0.n_turn == 0);
  CHECK(n0.total_loss_db == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(n0.required_carrier_dbm == doctest::Approx(-7.0).epsilon(1e-12));
}

TEST_CASE("relane preserves the shape and remaps the claims") {
  PanelTopology panel = PanelTopology::build(4, 4);
  Route r = plan(panel, xpu(0, 0), xpu(2, 3));
  Route moved = relane(panel, r, 5);
  CHECK(moved.waypoints == r.waypoints);
  CHECK(moved.wg_index == 5);
  for (const SegmentClaim& c : moved.claimed_segments) CHECK(c.segment.index == 5);
  for (const XbarNodeId& n : moved.claimed_nodes) CHECK(n.lane == 5);
  CHECK_THROWS_AS(relane(panel, r, 26), OutOfRangeError);
}

TEST_CASE("crosstalk floor aggregates leak terms") {
  PanelTopology panel = PanelTopology::build(1, 3);
  SwitchLossModel lm;

  // Victim: injected northbound at the middle tile (no interactions).
  Route victim = route_from_waypoints(panel, xpu(0, 1), "HBM_0_1_0", {{0, 1}});

  // No neighbours: no crosstalk.
  CHECK(crosstalk_floor(victim, {}, lm) == -std::numeric_limits<double>::infinity());

  // One bypass running west-to-east through the victim tile leaks its
  // drop-port residual (-15 dB) northbound onto the victim lane; the victim
  // has no further hops, so the floor is the bare isolation figure.
  Route aggressor = route_from_waypoints(panel, xpu(0, 0), xpu(0, 2), {{0, 0}, {0, 1}, {0, 2}});
  std::vector<Route> others{aggressor};
  const double one = crosstalk_floor(victim, others, lm);
  CHECK(one == doctest::Approx(-15.0).epsilon(1e-9));

  // A second identical leak term doubles the power: +3.01 dB.
  others.push_back(aggressor);
  const double two = crosstalk_floor(victim, others, lm);
  CHECK(two - one == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("route validation rejects tampered claims") {
  PanelTopology panel = PanelTopology::build(4, 4);
  CHECK_THROWS_AS(
      route_from_waypoints(panel, xpu(0, 0), xpu(0, 2), {{0, 0}, {0, 1}, {0, 2}, {0, 3}}),
      ValidationError);
  CHECK_THROWS_AS(
      route_from_waypoints(panel, xpu(0, 0), xpu(0, 1), {{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
      ValidationError);  // backtracking path
  CHECK_THROWS_AS(route_from_waypoints(panel, xpu(0, 0), xpu(0, 1), {{0, 0}, {0, 2}}),
                  ValidationError);  // not 4-adjacent
}
