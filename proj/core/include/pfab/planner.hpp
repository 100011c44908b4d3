#ifndef PFAB_PLANNER_HPP
#define PFAB_PLANNER_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfab/devices.hpp"
#include "pfab/topology.hpp"
#include "pfab/xbar.hpp"

namespace pfab {

// Directed use of one waveguide segment. Opposing headings on the same
// physical segment are distinct resources (links are unidirectional).
struct SegmentClaim {
  WgSegment segment;
  Direction heading = Direction::North;
  auto operator<=>(const SegmentClaim&) const = default;
};

struct Interaction {
  TileCoord tile;
  InteractionKind kind = InteractionKind::Bypass;
  Direction in_port = Direction::North;   // side the light enters from
  Direction out_port = Direction::North;  // side it leaves through
  auto operator<=>(const Interaction&) const = default;
};

// A planned optical path. Waypoints are the tiles visited in order; every
// tile entered by a hop hosts one switch interaction, so the interaction
// count equals the Manhattan distance between the end tiles. Injection at
// the source and extraction at the destination are folded into the fixed
// loss term of the budget.
struct Route {
  std::string src;
  std::string dst;
  TileCoord src_tile;
  TileCoord dst_tile;
  std::vector<TileCoord> waypoints;
  std::vector<Interaction> interactions;
  std::vector<SegmentClaim> claimed_segments;  // sorted, unique
  std::vector<XbarNodeId> claimed_nodes;       // sorted, unique
  int wg_index = 0;

  int turn_count() const;
  int bypass_count() const;
  bool operator==(const Route&) const = default;
};

enum class PlanPolicy { MinTurns, MinLoss };

struct PlanOptions {
  PlanPolicy policy = PlanPolicy::MinLoss;
  int max_turns = 2;
  std::optional<int> force_turns;  // supported values: 0, 1, 2
  int wg_index = 0;
  std::vector<TileCoord> blocked_tiles;
  SwitchLossModel loss_model;
};

Route plan(const PanelTopology& panel, const std::string& src, const std::string& dst,
           const PlanOptions& opts = {});

// Exhaustive oracle: every minimal Manhattan path between the endpoints with
// at most max_turns turns, in deterministic (turns, waypoints) order.
// Guarded to panels of at most 400 tiles.
std::vector<Route> enumerate_routes(const PanelTopology& panel, const std::string& src,
                                    const std::string& dst, int max_turns = 2,
                                    int wg_index = 0,
                                    const std::vector<TileCoord>& blocked_tiles = {});

// Same route shape on a different waveguide lane.
Route relane(const PanelTopology& panel, const Route& route, int wg_index);

// Builds and validates a route from an explicit waypoint list.
Route route_from_waypoints(const PanelTopology& panel, const std::string& src,
                           const std::string& dst, const std::vector<TileCoord>& waypoints,
                           int wg_index = 0);

struct LossBudget {
  int n_bypass = 0;
  int n_turn = 0;
  double switch_loss_db = 0.0;
  double fixed_loss_db = 0.0;
  double total_loss_db = 0.0;
  double required_carrier_dbm = 0.0;
  double required_carrier_mw = 0.0;
};

LossBudget loss_budget(const Route& route, const SwitchLossModel& loss_model = {},
                       double fixed_loss_db = 3.0, const Photodetector& pd = {});

// Worst-case aggregate of other routes' leak contributions landing on this
// route's waveguides, in dB relative to the victim signal at its receiver.
// Both carriers are assumed launched at equal power. Returns -infinity when
// nothing leaks in.
double crosstalk_floor(const Route& route, std::span<const Route> other_active,
                       const SwitchLossModel& loss_model = {});

}  // namespace pfab

#endif
