#ifndef PFAB_XBAR_HPP
#define PFAB_XBAR_HPP

#include <compare>
#include <optional>
#include <vector>

#include "pfab/topology.hpp"

namespace pfab {

// Side of a crossing node. A signal "incoming from West" entered through the
// west edge and is travelling eastward.
enum class Direction { North, South, East, West };

Direction opposite(Direction d);
Direction rotate90(Direction d);  // clockwise: N -> E -> S -> W -> N
Axis axis_of(Direction d);

struct PathId {
  Direction in = Direction::North;
  Direction out = Direction::South;
  auto operator<=>(const PathId&) const = default;
};

// Corner placement of the two resonators at a crossing node.
enum class Placement { ASouthwest, BNorthwest };

enum class InteractionKind { Bypass, Turn };

// Racetrack is the fabric default: its FSR matches the carrier grid so all
// lambdas of a waveguide switch together.
enum class NodeKind { Rtr, Mrr };
enum class SwitchGranularity { PerWavelength, PerWaveguide };

// Wavelength-flat per-interaction dB figures of the switch transfer
// functions. One number applies to every WDM carrier; the spectral shape
// lives in the device models.
struct SwitchLossModel {
  double drop_on_db = 0.5;
  double thru_off_db = 0.25;
  double thru_on_isolation_db = 24.0;
  double drop_off_isolation_db = 15.0;

  void validate() const;
  bool operator==(const SwitchLossModel&) const = default;
};

struct XbarNodeState {
  XbarNodeId node_id;
  bool resonator_a_on = false;  // southwestern
  bool resonator_b_on = false;  // northwestern
  SwitchLossModel loss_model;
};

// The eight in/out paths a single resonator can serve: the four
// straight-throughs plus the four turns of its corner. A and B cover
// complementary turn sets; together they reach all twelve paths.
std::vector<PathId> coverage_set(Placement p);

// Turn target of placement `p` for a signal incoming from `in`, or nullopt
// if that turn belongs to the other placement.
std::optional<Direction> turn_target(Placement p, Direction in);

// Which placement serves the (in, out) turn; nullopt for straight paths.
std::optional<Placement> turn_owner(Direction in, Direction out);

struct ResolveResult {
  Direction out = Direction::North;
  double loss_db = 0.0;
  InteractionKind kind = InteractionKind::Bypass;
};

// Steers an incoming signal through the node. Both resonators OFF passes it
// straight through at thru_off_db; exactly one ON turns it 90 degrees at
// drop_on_db. Both ON is a forbidden configuration.
ResolveResult resolve(const XbarNodeState& state, Direction in);

struct Leak {
  Direction out = Direction::North;
  double leak_db = 0.0;  // suppression relative to the carrier, positive dB
  auto operator<=>(const Leak&) const = default;
};

// Residual outputs besides the resolved one: the through leak when turning,
// and the drop leaks toward each OFF resonator's turn target when bypassing.
// Infinite isolation yields no leak entry.
std::vector<Leak> leakage(const XbarNodeState& state, Direction in);

SwitchGranularity granularity(NodeKind kind);

}  // namespace pfab

#endif
