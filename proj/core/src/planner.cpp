#include "pfab/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "pfab/errors.hpp"
#include "pfab/units.hpp"

namespace pfab {

namespace {

// Grid convention: +row is North, +col is East.
TileCoord step(TileCoord c, Direction d) {
  switch (d) {
    case Direction::North: return {c.row + 1, c.col};
    case Direction::South: return {c.row - 1, c.col};
    case Direction::East: return {c.row, c.col + 1};
    case Direction::West: return {c.row, c.col - 1};
  }
  throw InvalidStateError("bad direction");
}

Direction heading_between(TileCoord from, TileCoord to) {
  if (to.row == from.row + 1 && to.col == from.col) return Direction::North;
  if (to.row == from.row - 1 && to.col == from.col) return Direction::South;
  if (to.col == from.col + 1 && to.row == from.row) return Direction::East;
  if (to.col == from.col - 1 && to.row == from.row) return Direction::West;
  throw ValidationError("waypoints are not 4-adjacent");
}

std::vector<Direction> headings_of(const std::vector<TileCoord>& waypoints) {
  std::vector<Direction> h;
  h.reserve(waypoints.size() - 1);
  for (size_t i = 1; i < waypoints.size(); ++i)
    h.push_back(heading_between(waypoints[i - 1], waypoints[i]));
  return h;
}

// Directed segments a move occupies: the bundle lane inside both tiles the
// hop connects.
void claims_of_move(TileCoord from, TileCoord to, Direction h, int lane,
                    std::vector<SegmentClaim>& out) {
  out.push_back({{from, axis_of(h), lane}, h});
  out.push_back({{to, axis_of(h), lane}, h});
}

void append_path_tiles(const PanelTopology& panel, TileCoord at, TileCoord dst,
                       Direction row_dir, Direction col_dir, int turns_left,
                       std::optional<Direction> last, std::vector<TileCoord>& prefix,
                       const std::set<TileCoord>& blocked,
                       std::vector<std::vector<TileCoord>>& out) {
  if (at == dst) {
    out.push_back(prefix);
    return;
  }
  for (Direction d : {row_dir, col_dir}) {
    if (axis_of(d) == Axis::Vertical && at.row == dst.row) continue;
    if (axis_of(d) == Axis::Horizontal && at.col == dst.col) continue;
    int next_turns = turns_left;
    if (last && *last != d && --next_turns < 0) continue;
    TileCoord next = step(at, d);
    if (blocked.count(next)) continue;
    prefix.push_back(next);
    append_path_tiles(panel, next, dst, row_dir, col_dir, next_turns, d, prefix, blocked, out);
    prefix.pop_back();
  }
}

// All minimal Manhattan waypoint lists between two tiles with the turn cap,
// unsorted.
std::vector<std::vector<TileCoord>> minimal_paths(const PanelTopology& panel, TileCoord src,
                                                  TileCoord dst, int max_turns,
                                                  const std::vector<TileCoord>& blocked_tiles) {
  std::set<TileCoord> blocked(blocked_tiles.begin(), blocked_tiles.end());
  if (blocked.count(src) || blocked.count(dst))
    throw InfeasibleError("route endpoint tile is blocked");

  Direction row_dir = dst.row >= src.row ? Direction::North : Direction::South;
  Direction col_dir = dst.col >= src.col ? Direction::East : Direction::West;

  std::vector<std::vector<TileCoord>> out;
  std::vector<TileCoord> prefix{src};
  append_path_tiles(panel, src, dst, row_dir, col_dir, max_turns, std::nullopt, prefix,
                    blocked, out);
  return out;
}

int turns_in(const std::vector<TileCoord>& waypoints) {
  auto h = headings_of(waypoints);
  int turns = 0;
  for (size_t i = 1; i < h.size(); ++i)
    if (h[i] != h[i - 1]) ++turns;
  return turns;
}

}  // namespace

int Route::turn_count() const {
  return static_cast<int>(std::count_if(interactions.begin(), interactions.end(),
                                        [](const Interaction& i) {
                                          return i.kind == InteractionKind::Turn;
                                        }));
}

int Route::bypass_count() const {
  return static_cast<int>(interactions.size()) - turn_count();
}

Route route_from_waypoints(const PanelTopology& panel, const std::string& src,
                           const std::string& dst, const std::vector<TileCoord>& waypoints,
                           int wg_index) {
  if (waypoints.empty()) throw ValidationError("route needs at least one waypoint");
  if (wg_index < 0 || wg_index >= panel.wg_per_bundle())
    throw OutOfRangeError("wg_index outside the bundle");

  const EicSite& s = panel.locate_eic(src);
  const EicSite& d = panel.locate_eic(dst);
  if (waypoints.front() != s.tile || waypoints.back() != d.tile)
    throw ValidationError("waypoints do not join the endpoint tiles");
  for (TileCoord c : waypoints)
    if (!panel.in_grid(c)) throw OutOfRangeError("waypoint outside the grid");

  Route r;
  r.src = src;
  r.dst = dst;
  r.src_tile = s.tile;
  r.dst_tile = d.tile;
  r.waypoints = waypoints;
  r.wg_index = wg_index;

  auto h = headings_of(waypoints);
  bool seen[4] = {false, false, false, false};
  for (Direction dir : h) {
    seen[static_cast<int>(dir)] = true;
    if (seen[static_cast<int>(opposite(dir))])
      throw ValidationError("route backtracks; only minimal Manhattan paths are valid");
  }
  const size_t n = h.size();
  if (static_cast<int>(n) != panel.manhattan_hops(s.tile, d.tile))
    throw ValidationError("hop count does not match the Manhattan distance");

  for (size_t i = 0; i < n; ++i) {
    Interaction ia;
    ia.tile = waypoints[i + 1];
    ia.in_port = opposite(h[i]);
    ia.out_port = (i + 1 < n) ? h[i + 1] : h[i];
    ia.kind = (i + 1 < n && h[i + 1] != h[i]) ? InteractionKind::Turn
                                              : InteractionKind::Bypass;
    r.interactions.push_back(ia);
    r.claimed_nodes.push_back({waypoints[i + 1], wg_index});
    claims_of_move(waypoints[i], waypoints[i + 1], h[i], wg_index, r.claimed_segments);
  }
  if (n == 0) {
    // Same-tile route: no switch interactions, but the local vertical bundle
    // lane still carries the link.
    r.claimed_segments.push_back({{waypoints[0], Axis::Vertical, wg_index}, Direction::North});
  }

  std::sort(r.claimed_segments.begin(), r.claimed_segments.end());
  r.claimed_segments.erase(std::unique(r.claimed_segments.begin(), r.claimed_segments.end()),
                           r.claimed_segments.end());
  std::sort(r.claimed_nodes.begin(), r.claimed_nodes.end());
  r.claimed_nodes.erase(std::unique(r.claimed_nodes.begin(), r.claimed_nodes.end()),
                        r.claimed_nodes.end());
  return r;
}

Route plan(const PanelTopology& panel, const std::string& src, const std::string& dst,
           const PlanOptions& opts) {
  if (src == dst) throw InfeasibleError("degenerate route: source equals destination");
  if (opts.max_turns < 0) throw OutOfRangeError("max_turns must be nonnegative");
  if (opts.force_turns && (*opts.force_turns < 0 || *opts.force_turns > 2))
    throw InfeasibleError("force_turns supports 0 to 2 turns");

  const EicSite& s = panel.locate_eic(src);
  const EicSite& d = panel.locate_eic(dst);

  auto paths = minimal_paths(panel, s.tile, d.tile, opts.max_turns, opts.blocked_tiles);
  if (opts.force_turns) {
    std::erase_if(paths, [&](const auto& w) { return turns_in(w) != *opts.force_turns; });
  }
  if (paths.empty())
    throw InfeasibleError("no route within the turn budget between " + src + " and " + dst);

  auto key = [&](const std::vector<TileCoord>& w) {
    const int turns = turns_in(w);
    const int hops = static_cast<int>(w.size()) - 1;
    const double loss = (hops - turns) * opts.loss_model.thru_off_db +
                        turns * opts.loss_model.drop_on_db;
    // MinLoss orders by loss first; MinTurns by turn count first. On minimal
    // paths the two agree whenever drop_on_db >= thru_off_db.
    return opts.policy == PlanPolicy::MinLoss ? std::make_pair(loss, turns)
                                              : std::make_pair(static_cast<double>(turns), turns);
  };
  const std::vector<TileCoord>* best = &paths.front();
  for (const auto& w : paths) {
    auto kw = key(w), kb = key(*best);
    if (kw < kb || (kw == kb && w < *best)) best = &w;
  }
  return route_from_waypoints(panel, src, dst, *best, opts.wg_index);
}

std::vector<Route> enumerate_routes(const PanelTopology& panel, const std::string& src,
                                    const std::string& dst, int max_turns, int wg_index,
                                    const std::vector<TileCoord>& blocked_tiles) {
  if (panel.rows() * panel.cols() > 400)
    throw SizeError("enumerate_routes is guarded to panels of at most 400 tiles");
  if (src == dst) throw InfeasibleError("degenerate route: source equals destination");

  const EicSite& s = panel.locate_eic(src);
  const EicSite& d = panel.locate_eic(dst);
  auto paths = minimal_paths(panel, s.tile, d.tile, max_turns, blocked_tiles);
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    const int ta = turns_in(a), tb = turns_in(b);
    return std::tie(ta, a) < std::tie(tb, b);
  });

  std::vector<Route> out;
  out.reserve(paths.size());
  for (const auto& w : paths) out.push_back(route_from_waypoints(panel, src, dst, w, wg_index));
  return out;
}

Route relane(const PanelTopology& panel, const Route& route, int wg_index) {
  return route_from_waypoints(panel, route.src, route.dst, route.waypoints, wg_index);
}

LossBudget loss_budget(const Route& route, const SwitchLossModel& loss_model,
                       double fixed_loss_db, const Photodetector& pd) {
  loss_model.validate();
  if (fixed_loss_db < 0) throw OutOfRangeError("fixed loss must be nonnegative");

  LossBudget b;
  b.n_turn = route.turn_count();
  b.n_bypass = route.bypass_count();
  b.switch_loss_db = b.n_bypass * loss_model.thru_off_db + b.n_turn * loss_model.drop_on_db;
  b.fixed_loss_db = fixed_loss_db;
  b.total_loss_db = b.switch_loss_db + b.fixed_loss_db;
  b.required_carrier_dbm = pd.sensitivity_dbm + b.total_loss_db;
  b.required_carrier_mw = dbm_to_mw(b.required_carrier_dbm);
  return b;
}

double crosstalk_floor(const Route& route, std::span<const Route> other_active,
                       const SwitchLossModel& loss_model) {
  // Victim move list with the switch loss accumulated before each move.
  auto h = headings_of(route.waypoints);
  std::vector<std::pair<SegmentClaim, double>> victim_segments;
  double acc = 0.0;
  for (size_t i = 0; i < h.size(); ++i) {
    std::vector<SegmentClaim> claims;
    claims_of_move(route.waypoints[i], route.waypoints[i + 1], h[i], route.wg_index, claims);
    for (const auto& c : claims) victim_segments.emplace_back(c, acc);
    acc += route.interactions[i].kind == InteractionKind::Turn ? loss_model.drop_on_db
                                                               : loss_model.thru_off_db;
  }
  if (h.empty() && !route.claimed_segments.empty())
    victim_segments.emplace_back(route.claimed_segments.front(), 0.0);

  double linear_sum = 0.0;
  for (const Route& other : other_active) {
    double other_acc = 0.0;
    for (const Interaction& ia : other.interactions) {
      XbarNodeState state;
      state.node_id = {ia.tile, other.wg_index};
      state.loss_model = loss_model;
      if (ia.kind == InteractionKind::Turn) {
        auto owner = turn_owner(ia.in_port, ia.out_port);
        if (!owner) throw ValidationError("turn interaction without a covering resonator");
        (*owner == Placement::ASouthwest ? state.resonator_a_on : state.resonator_b_on) = true;
      }
      for (const Leak& leak : leakage(state, ia.in_port)) {
        const SegmentClaim here{{ia.tile, axis_of(leak.out), other.wg_index}, leak.out};
        const SegmentClaim next{{step(ia.tile, leak.out), axis_of(leak.out), other.wg_index},
                                leak.out};
        for (const auto& [claim, upstream] : victim_segments) {
          if (claim == here || claim == next) {
            linear_sum += db_to_linear(upstream - other_acc - leak.leak_db);
            break;
          }
        }
      }
      other_acc += resolve(state, ia.in_port).loss_db;
    }
  }
  if (linear_sum <= 0.0) return -std::numeric_limits<double>::infinity();
  return linear_to_db(linear_sum);
}

}  // namespace pfab
