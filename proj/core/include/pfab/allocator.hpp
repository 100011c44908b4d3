#ifndef PFAB_ALLOCATOR_HPP
#define PFAB_ALLOCATOR_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pfab/planner.hpp"

namespace pfab {

// Per-route wavelength plan. With racetrack (per-waveguide) nodes a grant is
// all-or-nothing: the whole lambda set of the waveguide travels together.
struct WdmPlan {
  std::vector<int> wg_index_per_hop;
  std::vector<int> lambda_set;
  bool operator==(const WdmPlan&) const = default;
};

struct ConflictReport {
  std::vector<SegmentClaim> segments;
  std::vector<XbarNodeId> nodes;
  bool empty() const { return segments.empty() && nodes.empty(); }
};

struct GrantedRoute {
  Route route;
  WdmPlan plan;
  bool operator==(const GrantedRoute&) const = default;
};

// Admission state for one timeslot. The allocation is the single logical
// owner of node states; callers must serialize mutations through it.
class SlotAllocation {
public:
  SlotAllocation() = default;
  SlotAllocation(const PanelTopology* panel, int slot, SwitchLossModel loss_model = {});

  int slot() const { return slot_; }
  const std::vector<GrantedRoute>& granted() const { return granted_; }
  const std::map<XbarNodeId, XbarNodeState>& node_states() const { return node_states_; }
  const SwitchLossModel& loss_model() const { return loss_model_; }
  bool empty() const { return granted_.empty(); }

  // All-or-nothing admission. On conflict the allocation is untouched and
  // every clashing resource is reported.
  ConflictReport try_add(const Route& route);
  void remove(const Route& route);

  bool operator==(const SlotAllocation& other) const;

private:
  const PanelTopology* panel_ = nullptr;
  int slot_ = 0;
  SwitchLossModel loss_model_;
  std::vector<GrantedRoute> granted_;
  std::map<XbarNodeId, XbarNodeState> node_states_;
  std::set<SegmentClaim> segment_claims_;
  std::set<XbarNodeId> node_claims_;
};

struct TryAllocateResult {
  std::optional<SlotAllocation> allocation;  // present iff granted
  ConflictReport conflicts;
  bool granted() const { return allocation.has_value(); }
};

// Pure variant: returns the grown allocation or the conflict report, leaving
// `current` untouched either way.
TryAllocateResult try_allocate(const SlotAllocation& current, const Route& route);

SlotAllocation release(const SlotAllocation& current, const Route& route);

// Lane search: tries the same route shape on each waveguide lane in order
// and grants the first that fits. Returns the granted lane, or nullopt with
// the lane-0 conflict report.
std::optional<int> try_add_any_lane(SlotAllocation& alloc, const PanelTopology& panel,
                                    const Route& route, ConflictReport* first_conflict = nullptr);

enum class InterfacePort { Tx, Rx };
enum class InterfaceState { Enabled, Disabled };

struct InterfaceDirective {
  std::string eic;
  InterfacePort port = InterfacePort::Tx;
  InterfaceState state = InterfaceState::Disabled;
  auto operator<=>(const InterfaceDirective&) const = default;
};

// E/O-O/E discipline: per granted route, exactly the source TX and
// destination RX are enabled; every other interface of EICs sitting on the
// route's tiles is disabled. An interface enabled by one route wins over a
// bystander disable from another.
std::vector<InterfaceDirective> interface_discipline(const SlotAllocation& alloc,
                                                     const PanelTopology& panel);

struct MaxConcurrentResult {
  int count = 0;
  std::vector<size_t> witness;  // indices into the input set
  bool exact = false;
};

// Maximum resource-disjoint subset. Exact (exhaustive) up to 20 routes,
// greedy in input order beyond that.
MaxConcurrentResult max_concurrent(const PanelTopology& panel, std::span<const Route> routes);

// Checks every SlotAllocation invariant: claim consistency, pairwise
// disjointness, node states realizing exactly the granted interactions, and
// hop-by-hop reproducibility through resolve(). Returns a description of the
// first violation, or nullopt if the allocation is sound.
std::optional<std::string> validate_allocation(const SlotAllocation& alloc,
                                               const PanelTopology& panel);

}  // namespace pfab

#endif
