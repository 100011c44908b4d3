#include "pfab/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "pfab/errors.hpp"
#include "pfab/planner.hpp"

namespace pfab {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: draws within a slot come from a state keyed on
// (seed, slot), so paired runs see identical per-slot randomness.
struct SlotRng {
  std::uint64_t state;
  SlotRng(std::uint64_t seed, std::uint64_t slot) : state((seed + 1) * kGolden ^ (slot + 1)) {
    splitmix64(state);
  }
  double uniform01() { return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53; }
  int uniform_int(int n) {  // [0, n)
    return static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
  }
};

// Inverse-CDF Poisson draw from a single uniform; monotone in lambda for a
// fixed u, which keeps paired-seed load comparisons one-sided.
int poisson_inverse(double lambda, double u, int cap) {
  if (lambda <= 0) return 0;
  double p = std::exp(-lambda);
  double cdf = p;
  int k = 0;
  while (u > cdf && k < cap) {
    ++k;
    p *= lambda / k;
    cdf += p;
  }
  return k;
}

}  // namespace

void WorkloadParams::validate() const {
  if (rate < 0 || rate > 100) throw OutOfRangeError("workload rate must be in [0, 100]");
  if (nearby_fraction < 0 || nearby_fraction > 1)
    throw OutOfRangeError("nearby_fraction must be in [0, 1]");
  if (xpu_duty < 0.5 || xpu_duty > 0.9)
    throw OutOfRangeError("xpu_duty must be in [0.5, 0.9]");
  if (slots < 0) throw OutOfRangeError("slots must be nonnegative");
  if (size_bits <= 0) throw OutOfRangeError("size_bits must be positive");
}

Workload generate(const PanelTopology& panel, const WorkloadParams& params) {
  params.validate();
  Workload wl;
  wl.params = params;

  const int tiles = panel.rows() * panel.cols();
  const int hbm_stacks = panel.spec().tile_template.hbm_stacks;
  constexpr int kMaxPerSlot = 1000;

  for (std::int64_t slot = 0; slot < params.slots; ++slot) {
    SlotRng rng(params.seed, static_cast<std::uint64_t>(slot));
    // Per-slot reseeding keeps paired runs aligned: a slot that is busy under
    // two duty or rate settings draws identical request prefixes.
    const bool busy = rng.uniform01() < params.xpu_duty;
    const int count = busy ? poisson_inverse(params.rate, rng.uniform01(), kMaxPerSlot) : 0;
    for (int j = 0; j < count; ++j) {
      const int src_tile = rng.uniform_int(tiles);
      TileCoord src{src_tile / panel.cols(), src_tile % panel.cols()};
      const bool nearby = tiles == 1 || rng.uniform01() < params.nearby_fraction;

      TrafficRequest req;
      req.arrival_slot = slot;
      req.size_bits = params.size_bits;
      req.src = "XPU_" + std::to_string(src.row) + "_" + std::to_string(src.col);
      if (nearby && hbm_stacks > 0) {
        const int h = rng.uniform_int(hbm_stacks);
        req.dst = "HBM_" + std::to_string(src.row) + "_" + std::to_string(src.col) + "_" +
                  std::to_string(h);
      } else {
        int other = rng.uniform_int(tiles - 1);
        if (other >= src_tile) ++other;
        TileCoord dst{other / panel.cols(), other % panel.cols()};
        const int pick = hbm_stacks > 0 ? rng.uniform_int(hbm_stacks + 1) : 0;
        if (pick == 0)
          req.dst = "XPU_" + std::to_string(dst.row) + "_" + std::to_string(dst.col);
        else
          req.dst = "HBM_" + std::to_string(dst.row) + "_" + std::to_string(dst.col) + "_" +
                    std::to_string(pick - 1);
      }
      wl.requests.push_back(std::move(req));
    }
  }
  return wl;
}

SimReport run(const PanelTopology& panel, const Workload& workload, const SimConfig& cfg) {
  if (cfg.slot_seconds <= 0) throw OutOfRangeError("slot_seconds must be positive");
  if (cfg.link_rate_gbps <= 0) throw OutOfRangeError("link_rate_gbps must be positive");
  if (cfg.reconfig_slots < 0) throw OutOfRangeError("reconfig_slots must be nonnegative");
  cfg.loss_model.validate();

  const std::int64_t capacity_bits = std::llround(
      static_cast<double>(panel.lambdas_per_wg()) * cfg.link_rate_gbps * 1e9 * cfg.slot_seconds);
  if (capacity_bits <= 0) throw OutOfRangeError("slot capacity rounds to zero bits");

  struct Pending {
    size_t request;
    std::int64_t arrival;
  };
  struct Active {
    size_t request;
    Route route;
    std::int64_t remaining_bits;
    int reconfig_left;
    double loss_db;
  };

  SimReport rep;
  rep.slots_run = workload.params.slots;
  rep.reconfig_slots = cfg.reconfig_slots;

  SlotAllocation alloc(&panel, 0, cfg.loss_model);
  std::deque<Pending> queue;
  std::vector<Active> active;
  std::map<std::pair<std::string, std::string>, Route> route_cache;

  size_t next_request = 0;
  std::int64_t total_wait = 0;
  std::int64_t granted_delayed = 0;
  double total_loss = 0.0;
  std::int64_t dropped_bits = 0;

  PlanOptions popts;
  popts.policy = PlanPolicy::MinLoss;
  popts.max_turns = cfg.max_turns;
  popts.loss_model = cfg.loss_model;

  auto plan_cached = [&](const std::string& src, const std::string& dst) -> const Route& {
    auto key = std::make_pair(src, dst);
    auto it = route_cache.find(key);
    if (it == route_cache.end())
      it = route_cache.emplace(key, plan(panel, src, dst, popts)).first;
    return it->second;
  };

  for (std::int64_t slot = 0; slot < workload.params.slots; ++slot) {
    // Expire finished transfers.
    for (auto it = active.begin(); it != active.end();) {
      if (it->remaining_bits == 0) {
        alloc.remove(it->route);
        it = active.erase(it);
      } else {
        ++it;
      }
    }

    // Arrivals.
    while (next_request < workload.requests.size() &&
           workload.requests[next_request].arrival_slot == slot) {
      queue.push_back({next_request, slot});
      rep.requests_arrived += 1;
      rep.offered_bits += workload.requests[next_request].size_bits;
      ++next_request;
    }

    // Admission. FIFO stops at the first blocked head; random order gives
    // every queued request a chance each slot.
    std::vector<size_t> order(queue.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (cfg.random_order) {
      SlotRng rng(workload.params.seed ^ 0xa5a5a5a5ULL, static_cast<std::uint64_t>(slot));
      for (size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[static_cast<size_t>(rng.uniform_int(static_cast<int>(i)))]);
    }

    std::vector<size_t> granted_positions;
    for (size_t pos : order) {
      const Pending& p = queue[pos];
      const TrafficRequest& req = workload.requests[p.request];
      const Route& shape = plan_cached(req.src, req.dst);
      if (try_add_any_lane(alloc, panel, shape)) {
        const Route& granted = alloc.granted().back().route;
        const std::int64_t wait = slot - req.arrival_slot;
        total_wait += wait;
        if (wait > 0) granted_delayed += 1;
        rep.requests_granted += 1;
        const double loss =
            loss_budget(granted, cfg.loss_model, cfg.fixed_loss_db, cfg.pd).total_loss_db;
        total_loss += loss;
        active.push_back({p.request, granted, req.size_bits, cfg.reconfig_slots, loss});
        granted_positions.push_back(pos);
      } else if (!cfg.random_order) {
        break;  // head-of-line blocking
      }
    }
    std::sort(granted_positions.rbegin(), granted_positions.rend());
    for (size_t pos : granted_positions) queue.erase(queue.begin() + static_cast<long>(pos));

    if (cfg.drop_blocked) {
      for (const Pending& p : queue) {
        dropped_bits += workload.requests[p.request].size_bits;
        rep.requests_dropped += 1;
      }
      queue.clear();
    }

    // Delivery.
    for (Active& a : active) {
      if (a.reconfig_left > 0) {
        --a.reconfig_left;
        continue;
      }
      const std::int64_t now = std::min(a.remaining_bits, capacity_bits);
      a.remaining_bits -= now;
      rep.bits_delivered += now;
      rep.max_route_bits_per_slot = std::max(rep.max_route_bits_per_slot, now);
    }

    rep.peak_concurrent_routes =
        std::max(rep.peak_concurrent_routes, static_cast<int>(active.size()));
    rep.carrier_energy_ws += static_cast<double>(active.size()) * panel.lambdas_per_wg() *
                             cfg.carrier_power_per_lambda_w * cfg.slot_seconds;

    // Conservation at the slot boundary.
    std::int64_t in_flight = 0;
    for (const Active& a : active) in_flight += a.remaining_bits;
    std::int64_t queued = 0;
    for (const Pending& p : queue) queued += workload.requests[p.request].size_bits;
    if (rep.offered_bits != rep.bits_delivered + in_flight + queued + dropped_bits)
      throw InvalidStateError("bit conservation violated at slot " + std::to_string(slot));
  }

  // Blocked: not granted in the arrival slot, whether it later succeeded,
  // stayed queued, or was dropped.
  rep.requests_blocked =
      granted_delayed + rep.requests_dropped + static_cast<std::int64_t>(queue.size());
  rep.blocking_probability =
      rep.requests_arrived == 0
          ? 0.0
          : static_cast<double>(rep.requests_blocked) / static_cast<double>(rep.requests_arrived);
  rep.mean_wait_slots = rep.requests_granted == 0
                            ? 0.0
                            : static_cast<double>(total_wait) /
                                  static_cast<double>(rep.requests_granted);
  rep.mean_path_loss_db =
      rep.requests_granted == 0 ? 0.0 : total_loss / static_cast<double>(rep.requests_granted);
  return rep;
}

std::vector<SweepRow> sweep(const PanelSpec& base, const WorkloadParams& workload,
                            const SimConfig& cfg, const SweepGrid& grid) {
  const std::vector<double> duties = grid.xpu_duty.empty()
                                         ? std::vector<double>{workload.xpu_duty}
                                         : grid.xpu_duty;
  const std::vector<double> rates =
      grid.rate.empty() ? std::vector<double>{workload.rate} : grid.rate;
  const std::vector<int> widths = grid.wg_per_bundle.empty()
                                      ? std::vector<int>{base.wg_per_bundle}
                                      : grid.wg_per_bundle;

  std::vector<SweepRow> rows;
  std::uint64_t seed = workload.seed;
  for (double duty : duties) {
    for (double rate : rates) {
      WorkloadParams wp = workload;
      wp.xpu_duty = duty;
      wp.rate = rate;
      wp.seed = seed;
      for (int width : widths) {
        PanelSpec spec = base;
        spec.wg_per_bundle = width;
        PanelTopology panel = PanelTopology::build(spec);
        Workload wl = generate(panel, wp);
        rows.push_back({duty, rate, width, seed, run(panel, wl, cfg)});
      }
      ++seed;
    }
  }
  return rows;
}

}  // namespace pfab
