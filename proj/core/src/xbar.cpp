#include "pfab/xbar.hpp"

#include <cmath>

#include "pfab/errors.hpp"

namespace pfab {

Direction opposite(Direction d) {
  switch (d) {
    case Direction::North: return Direction::South;
    case Direction::South: return Direction::North;
    case Direction::East: return Direction::West;
    case Direction::West: return Direction::East;
  }
  throw InvalidStateError("bad direction");
}

Direction rotate90(Direction d) {
  switch (d) {
    case Direction::North: return Direction::East;
    case Direction::East: return Direction::South;
    case Direction::South: return Direction::West;
    case Direction::West: return Direction::North;
  }
  throw InvalidStateError("bad direction");
}

Axis axis_of(Direction d) {
  return (d == Direction::North || d == Direction::South) ? Axis::Vertical
                                                          : Axis::Horizontal;
}

void SwitchLossModel::validate() const {
  if (drop_on_db < 0 || thru_off_db < 0 || thru_on_isolation_db < 0 ||
      drop_off_isolation_db < 0)
    throw OutOfRangeError("switch losses must be nonnegative");
  if (thru_on_isolation_db < thru_off_db)
    throw OutOfRangeError("thru_on_isolation_db below thru_off_db");
  if (drop_off_isolation_db < drop_on_db)
    throw OutOfRangeError("drop_off_isolation_db below drop_on_db");
}

std::optional<Direction> turn_target(Placement p, Direction in) {
  // Each resonator couples one diagonal pair of port couplings; the two
  // placements split the eight turns between them.
  if (p == Placement::ASouthwest) {
    switch (in) {
      case Direction::West: return Direction::North;
      case Direction::North: return Direction::West;
      case Direction::East: return Direction::South;
      case Direction::South: return Direction::East;
    }
  } else {
    switch (in) {
      case Direction::West: return Direction::South;
      case Direction::South: return Direction::West;
      case Direction::East: return Direction::North;
      case Direction::North: return Direction::East;
    }
  }
  return std::nullopt;
}

std::vector<PathId> coverage_set(Placement p) {
  std::vector<PathId> out;
  for (Direction in : {Direction::North, Direction::South, Direction::East, Direction::West}) {
    out.push_back({in, opposite(in)});
    if (auto t = turn_target(p, in)) out.push_back({in, *t});
  }
  return out;
}

std::optional<Placement> turn_owner(Direction in, Direction out) {
  if (out == opposite(in) || out == in) return std::nullopt;
  if (turn_target(Placement::ASouthwest, in) == out) return Placement::ASouthwest;
  if (turn_target(Placement::BNorthwest, in) == out) return Placement::BNorthwest;
  return std::nullopt;
}

ResolveResult resolve(const XbarNodeState& state, Direction in) {
  if (state.resonator_a_on && state.resonator_b_on)
    throw InvalidStateError("both resonators ON at node");
  if (!state.resonator_a_on && !state.resonator_b_on)
    return {opposite(in), state.loss_model.thru_off_db, InteractionKind::Bypass};

  Placement p = state.resonator_a_on ? Placement::ASouthwest : Placement::BNorthwest;
  auto target = turn_target(p, in);
  if (!target)
    throw InfeasibleError("active resonator does not cover this incoming direction");
  return {*target, state.loss_model.drop_on_db, InteractionKind::Turn};
}

std::vector<Leak> leakage(const XbarNodeState& state, Direction in) {
  if (state.resonator_a_on && state.resonator_b_on)
    throw InvalidStateError("both resonators ON at node");

  std::vector<Leak> out;
  if (state.resonator_a_on || state.resonator_b_on) {
    if (std::isfinite(state.loss_model.thru_on_isolation_db))
      out.push_back({opposite(in), state.loss_model.thru_on_isolation_db});
    return out;
  }
  if (!std::isfinite(state.loss_model.drop_off_isolation_db)) return out;
  for (Placement p : {Placement::ASouthwest, Placement::BNorthwest})
    if (auto t = turn_target(p, in))
      out.push_back({*t, state.loss_model.drop_off_isolation_db});
  return out;
}

SwitchGranularity granularity(NodeKind kind) {
  return kind == NodeKind::Mrr ? SwitchGranularity::PerWavelength
                               : SwitchGranularity::PerWaveguide;
}

}  // namespace pfab
