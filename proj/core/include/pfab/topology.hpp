#ifndef PFAB_TOPOLOGY_HPP
#define PFAB_TOPOLOGY_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace pfab {

struct TileCoord {
  int row = 0;
  int col = 0;
  auto operator<=>(const TileCoord&) const = default;
};

enum class Axis { Vertical, Horizontal };

enum class EicKind { Xpu, HbmStack, SwitchController, Other };

struct EicSite {
  std::string id;
  EicKind kind = EicKind::Other;
  TileCoord tile;
  int tx_ports = 0;
  int rx_ports = 0;
};

// Per-tile EIC population. Each tile carries one XPU, a stack of HBMs and the
// switch controller; the XPU's 832 links are split evenly between TX and RX.
struct TileTemplate {
  int hbm_stacks = 12;
  int xpu_links = 832;
  int hbm_links_per_stack = 32;
  bool operator==(const TileTemplate&) const = default;
};

struct UnitTile {
  TileCoord coord;
  std::vector<EicSite> eic_sites;
  std::string switch_region;
};

// One waveguide of a tile's vertical or horizontal bundle. This is the
// resource unit for conflict accounting; direction of use is tracked
// separately by routes.
struct WgSegment {
  TileCoord tile;
  Axis axis = Axis::Vertical;
  int index = 0;
  auto operator<=>(const WgSegment&) const = default;
};

// Crossing node coupling vertical and horizontal waveguide `lane` of a tile.
// Routes keep a single lane end to end, so one node per (tile, lane) is the
// switching resource a traversal occupies.
struct XbarNodeId {
  TileCoord tile;
  int lane = 0;
  auto operator<=>(const XbarNodeId&) const = default;
};

struct PanelSpec {
  int rows = 1;
  int cols = 1;
  int wg_per_bundle = 26;
  int lambdas_per_wg = 32;
  TileTemplate tile_template;
  bool operator==(const PanelSpec&) const = default;
};

class PanelTopology {
public:
  static PanelTopology build(const PanelSpec& spec);
  static PanelTopology build(int rows, int cols, const TileTemplate& tmpl = {});

  int rows() const { return spec_.rows; }
  int cols() const { return spec_.cols; }
  int wg_per_bundle() const { return spec_.wg_per_bundle; }
  int lambdas_per_wg() const { return spec_.lambdas_per_wg; }
  const PanelSpec& spec() const { return spec_; }

  const std::vector<UnitTile>& tiles() const { return tiles_; }
  const UnitTile& tile(TileCoord c) const;
  bool in_grid(TileCoord c) const;

  // |d_row| + |d_col|; equals the number of switch interactions of any
  // minimal route between the tiles.
  int manhattan_hops(TileCoord a, TileCoord b) const;

  const EicSite& locate_eic(const std::string& id) const;

  std::vector<WgSegment> enumerate_segments() const;
  std::vector<XbarNodeId> enumerate_nodes() const;

private:
  PanelSpec spec_;
  std::vector<UnitTile> tiles_;                       // row-major
  std::vector<std::pair<std::string, std::pair<int, int>>> eic_index_;  // sorted by id
};

}  // namespace pfab

#endif
