#include "pfab/topology.hpp"

#include <algorithm>
#include <cstdlib>

#include "pfab/errors.hpp"

namespace pfab {

namespace {

std::string coord_suffix(TileCoord c) {
  return std::to_string(c.row) + "_" + std::to_string(c.col);
}

}  // namespace

PanelTopology PanelTopology::build(const PanelSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1)
    throw OutOfRangeError("panel dimensions must be at least 1x1");
  if (spec.wg_per_bundle < 1)
    throw OutOfRangeError("wg_per_bundle must be at least 1");
  if (spec.lambdas_per_wg < 1)
    throw OutOfRangeError("lambdas_per_wg must be at least 1");
  if (spec.tile_template.hbm_stacks < 0 || spec.tile_template.xpu_links < 0 ||
      spec.tile_template.hbm_links_per_stack < 0)
    throw OutOfRangeError("tile template counts must be nonnegative");

  PanelTopology panel;
  panel.spec_ = spec;
  panel.tiles_.reserve(static_cast<size_t>(spec.rows) * spec.cols);

  const TileTemplate& t = spec.tile_template;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      UnitTile tile;
      tile.coord = {r, c};
      tile.switch_region = "XBAR_" + coord_suffix(tile.coord);

      EicSite xpu;
      xpu.id = "XPU_" + coord_suffix(tile.coord);
      xpu.kind = EicKind::Xpu;
      xpu.tile = tile.coord;
      xpu.tx_ports = t.xpu_links / 2;
      xpu.rx_ports = t.xpu_links - xpu.tx_ports;
      tile.eic_sites.push_back(std::move(xpu));

      for (int h = 0; h < t.hbm_stacks; ++h) {
        EicSite hbm;
        hbm.id = "HBM_" + coord_suffix(tile.coord) + "_" + std::to_string(h);
        hbm.kind = EicKind::HbmStack;
        hbm.tile = tile.coord;
        hbm.tx_ports = t.hbm_links_per_stack / 2;
        hbm.rx_ports = t.hbm_links_per_stack - hbm.tx_ports;
        tile.eic_sites.push_back(std::move(hbm));
      }

      EicSite ctrl;
      ctrl.id = "SWC_" + coord_suffix(tile.coord);
      ctrl.kind = EicKind::SwitchController;
      ctrl.tile = tile.coord;
      tile.eic_sites.push_back(std::move(ctrl));

      panel.tiles_.push_back(std::move(tile));
    }
  }

  for (size_t ti = 0; ti < panel.tiles_.size(); ++ti) {
    const auto& sites = panel.tiles_[ti].eic_sites;
    for (size_t si = 0; si < sites.size(); ++si)
      panel.eic_index_.emplace_back(sites[si].id,
                                    std::make_pair(static_cast<int>(ti), static_cast<int>(si)));
  }
  std::sort(panel.eic_index_.begin(), panel.eic_index_.end());
  for (size_t i = 1; i < panel.eic_index_.size(); ++i)
    if (panel.eic_index_[i].first == panel.eic_index_[i - 1].first)
      throw ValidationError("duplicate EIC id: " + panel.eic_index_[i].first);

  return panel;
}

PanelTopology PanelTopology::build(int rows, int cols, const TileTemplate& tmpl) {
  PanelSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.tile_template = tmpl;
  return build(spec);
}

bool PanelTopology::in_grid(TileCoord c) const {
  return c.row >= 0 && c.row < spec_.rows && c.col >= 0 && c.col < spec_.cols;
}

const UnitTile& PanelTopology::tile(TileCoord c) const {
  if (!in_grid(c)) throw OutOfRangeError("tile coordinate outside the grid");
  return tiles_[static_cast<size_t>(c.row) * spec_.cols + c.col];
}

int PanelTopology::manhattan_hops(TileCoord a, TileCoord b) const {
  if (!in_grid(a) || !in_grid(b))
    throw OutOfRangeError("coordinate outside the grid");
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

const EicSite& PanelTopology::locate_eic(const std::string& id) const {
  auto it = std::lower_bound(eic_index_.begin(), eic_index_.end(), id,
                             [](const auto& e, const std::string& key) { return e.first < key; });
  if (it == eic_index_.end() || it->first != id)
    throw NotFoundError("unknown EIC id: " + id);
  return tiles_[it->second.first].eic_sites[it->second.second];
}

std::vector<WgSegment> PanelTopology::enumerate_segments() const {
  std::vector<WgSegment> out;
  out.reserve(tiles_.size() * spec_.wg_per_bundle * 2);
  for (const auto& tile : tiles_)
    for (Axis axis : {Axis::Vertical, Axis::Horizontal})
      for (int i = 0; i < spec_.wg_per_bundle; ++i)
        out.push_back({tile.coord, axis, i});
  return out;
}

std::vector<XbarNodeId> PanelTopology::enumerate_nodes() const {
  std::vector<XbarNodeId> out;
  out.reserve(tiles_.size() * spec_.wg_per_bundle);
  for (const auto& tile : tiles_)
    for (int i = 0; i < spec_.wg_per_bundle; ++i)
      out.push_back({tile.coord, i});
  return out;
}

}  // namespace pfab
