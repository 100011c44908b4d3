#include "pfab/allocator.hpp"

#include <algorithm>
#include <functional>

#include "pfab/errors.hpp"

namespace pfab {

namespace {

WdmPlan plan_for(const PanelTopology& panel, const Route& route) {
  WdmPlan plan;
  const size_t hops = route.waypoints.size() - 1;
  plan.wg_index_per_hop.assign(std::max<size_t>(hops, 1), route.wg_index);
  plan.lambda_set.resize(panel.lambdas_per_wg());
  for (int i = 0; i < panel.lambdas_per_wg(); ++i) plan.lambda_set[i] = i;
  return plan;
}

void validate_route_for(const PanelTopology& panel, const Route& route) {
  // Rebuilding from the waypoints re-runs every Route invariant and catches
  // claims that were tampered with after planning.
  Route rebuilt =
      route_from_waypoints(panel, route.src, route.dst, route.waypoints, route.wg_index);
  if (rebuilt != route)
    throw ValidationError("route claims do not match its waypoints");
}

std::optional<Placement> required_placement(const Interaction& ia) {
  if (ia.kind == InteractionKind::Bypass) return std::nullopt;
  auto owner = turn_owner(ia.in_port, ia.out_port);
  if (!owner) throw ValidationError("turn interaction without a covering resonator");
  return owner;
}

}  // namespace

SlotAllocation::SlotAllocation(const PanelTopology* panel, int slot, SwitchLossModel loss_model)
    : panel_(panel), slot_(slot), loss_model_(loss_model) {
  loss_model_.validate();
}

ConflictReport SlotAllocation::try_add(const Route& route) {
  if (!panel_) throw InvalidStateError("allocation not bound to a panel");
  validate_route_for(*panel_, route);

  ConflictReport report;
  for (const auto& seg : route.claimed_segments)
    if (segment_claims_.count(seg)) report.segments.push_back(seg);
  for (const auto& node : route.claimed_nodes)
    if (node_claims_.count(node)) report.nodes.push_back(node);
  if (!report.empty()) return report;

  for (const auto& seg : route.claimed_segments) segment_claims_.insert(seg);
  for (const auto& node : route.claimed_nodes) node_claims_.insert(node);
  for (const auto& ia : route.interactions) {
    XbarNodeState state;
    state.node_id = {ia.tile, route.wg_index};
    state.loss_model = loss_model_;
    if (auto p = required_placement(ia))
      (*p == Placement::ASouthwest ? state.resonator_a_on : state.resonator_b_on) = true;
    node_states_[state.node_id] = state;
  }
  granted_.push_back({route, plan_for(*panel_, route)});
  return report;
}

void SlotAllocation::remove(const Route& route) {
  auto it = std::find_if(granted_.begin(), granted_.end(),
                         [&](const GrantedRoute& g) { return g.route == route; });
  if (it == granted_.end())
    throw NotFoundError("route is not granted in this slot");

  for (const auto& seg : it->route.claimed_segments) segment_claims_.erase(seg);
  for (const auto& node : it->route.claimed_nodes) {
    node_claims_.erase(node);
    node_states_.erase(node);  // exclusively owned; reset to both-OFF
  }
  granted_.erase(it);
}

bool SlotAllocation::operator==(const SlotAllocation& other) const {
  auto states_equal = [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return false;
    for (auto ita = a.begin(), itb = b.begin(); ita != a.end(); ++ita, ++itb) {
      if (ita->first != itb->first) return false;
      if (ita->second.resonator_a_on != itb->second.resonator_a_on ||
          ita->second.resonator_b_on != itb->second.resonator_b_on)
        return false;
    }
    return true;
  };
  return slot_ == other.slot_ && granted_ == other.granted_ &&
         segment_claims_ == other.segment_claims_ && node_claims_ == other.node_claims_ &&
         states_equal(node_states_, other.node_states_);
}

TryAllocateResult try_allocate(const SlotAllocation& current, const Route& route) {
  SlotAllocation next = current;
  ConflictReport report = next.try_add(route);
  if (!report.empty()) return {std::nullopt, std::move(report)};
  return {std::move(next), {}};
}

SlotAllocation release(const SlotAllocation& current, const Route& route) {
  SlotAllocation next = current;
  next.remove(route);
  return next;
}

std::optional<int> try_add_any_lane(SlotAllocation& alloc, const PanelTopology& panel,
                                    const Route& route, ConflictReport* first_conflict) {
  for (int lane = 0; lane < panel.wg_per_bundle(); ++lane) {
    Route candidate = lane == route.wg_index ? route : relane(panel, route, lane);
    ConflictReport report = alloc.try_add(candidate);
    if (report.empty()) return lane;
    if (lane == 0 && first_conflict) *first_conflict = std::move(report);
  }
  return std::nullopt;
}

std::vector<InterfaceDirective> interface_discipline(const SlotAllocation& alloc,
                                                     const PanelTopology& panel) {
  std::map<std::pair<std::string, InterfacePort>, InterfaceState> states;
  auto disable = [&](const std::string& id, InterfacePort port) {
    states.emplace(std::make_pair(id, port), InterfaceState::Disabled);
  };
  for (const auto& g : alloc.granted()) {
    states[{g.route.src, InterfacePort::Tx}] = InterfaceState::Enabled;
    states[{g.route.dst, InterfacePort::Rx}] = InterfaceState::Enabled;
    for (TileCoord c : g.route.waypoints) {
      for (const EicSite& site : panel.tile(c).eic_sites) {
        if (site.id == g.route.src || site.id == g.route.dst) continue;
        disable(site.id, InterfacePort::Tx);
        disable(site.id, InterfacePort::Rx);
      }
    }
  }
  std::vector<InterfaceDirective> out;
  out.reserve(states.size());
  for (const auto& [key, state] : states) out.push_back({key.first, key.second, state});
  return out;
}

MaxConcurrentResult max_concurrent(const PanelTopology& panel, std::span<const Route> routes) {
  const size_t n = routes.size();
  for (const Route& r : routes) validate_route_for(panel, r);

  if (n > 20) {
    // Greedy in input order.
    MaxConcurrentResult res;
    res.exact = false;
    SlotAllocation alloc(&panel, 0);
    for (size_t i = 0; i < n; ++i)
      if (alloc.try_add(routes[i]).empty()) res.witness.push_back(i);
    res.count = static_cast<int>(res.witness.size());
    return res;
  }

  std::vector<uint32_t> conflicts(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      bool clash =
          std::ranges::any_of(routes[i].claimed_segments,
                              [&](const SegmentClaim& s) {
                                return std::ranges::binary_search(routes[j].claimed_segments, s);
                              }) ||
          std::ranges::any_of(routes[i].claimed_nodes, [&](const XbarNodeId& nd) {
            return std::ranges::binary_search(routes[j].claimed_nodes, nd);
          });
      if (clash) {
        conflicts[i] |= 1u << j;
        conflicts[j] |= 1u << i;
      }
    }
  }

  uint32_t best_mask = 0;
  int best_count = 0;
  std::function<void(size_t, uint32_t, int)> search = [&](size_t idx, uint32_t chosen, int count) {
    if (count + static_cast<int>(n - idx) <= best_count) return;
    if (idx == n) {
      if (count > best_count) {
        best_count = count;
        best_mask = chosen;
      }
      return;
    }
    const bool compatible = (conflicts[idx] & chosen) == 0;
    if (compatible) search(idx + 1, chosen | (1u << idx), count + 1);
    search(idx + 1, chosen, count);
  };
  search(0, 0, 0);

  MaxConcurrentResult res;
  res.exact = true;
  res.count = best_count;
  for (size_t i = 0; i < n; ++i)
    if (best_mask & (1u << i)) res.witness.push_back(i);
  return res;
}

std::optional<std::string> validate_allocation(const SlotAllocation& alloc,
                                               const PanelTopology& panel) {
  std::set<SegmentClaim> segments;
  std::set<XbarNodeId> nodes;

  for (const auto& g : alloc.granted()) {
    Route rebuilt;
    try {
      rebuilt = route_from_waypoints(panel, g.route.src, g.route.dst, g.route.waypoints,
                                     g.route.wg_index);
    } catch (const Error& e) {
      return std::string("granted route is invalid: ") + e.what();
    }
    if (rebuilt != g.route) return "granted route claims drifted from its waypoints";

    for (const auto& seg : g.route.claimed_segments)
      if (!segments.insert(seg).second) return "segment claimed by two granted routes";
    for (const auto& node : g.route.claimed_nodes)
      if (!nodes.insert(node).second) return "node claimed by two granted routes";

    if (g.plan.lambda_set.size() != static_cast<size_t>(panel.lambdas_per_wg()))
      return "per-waveguide grant must carry the full lambda set";

    // Hop-by-hop replay through the switch model.
    for (const auto& ia : g.route.interactions) {
      auto it = alloc.node_states().find({ia.tile, g.route.wg_index});
      if (it == alloc.node_states().end()) return "missing node state for an interaction";
      ResolveResult rr = resolve(it->second, ia.in_port);
      if (rr.out != ia.out_port || rr.kind != ia.kind)
        return "node states do not realize the granted route";
    }
  }

  // No stray node states beyond the granted interactions.
  size_t interaction_nodes = 0;
  for (const auto& g : alloc.granted()) interaction_nodes += g.route.claimed_nodes.size();
  if (alloc.node_states().size() != interaction_nodes)
    return "node states exist for nodes no granted route interacts with";

  return std::nullopt;
}

}  // namespace pfab
