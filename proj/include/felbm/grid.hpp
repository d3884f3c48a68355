#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "felbm/stencil.hpp"

namespace felbm {

enum class NodeKind : std::uint8_t {
  bulk = 0,
  moving_wall,
  obstacle_wall,
  exterior,
};

/// Structured grid with unit spacing. Node classification lives in `mask`;
/// every boundary layer of a non-periodic axis must be non-bulk so that
/// neighbor reads of bulk nodes never leave the domain.
struct Grid {
  int d = 2;
  std::array<int, 3> dims{1, 1, 1};  // dims[2] == 1 in 2D
  std::array<bool, 3> periodic{false, false, false};
  std::vector<NodeKind> mask;

  long n() const {
    return static_cast<long>(dims[0]) * dims[1] * dims[2];
  }
  long index(int x, int y, int z = 0) const {
    return x + static_cast<long>(dims[0]) * (y + static_cast<long>(dims[1]) * z);
  }
  void coords(long i, int& x, int& y, int& z) const {
    x = static_cast<int>(i % dims[0]);
    y = static_cast<int>((i / dims[0]) % dims[1]);
    z = static_cast<int>(i / (static_cast<long>(dims[0]) * dims[1]));
  }
  bool is_bulk(long i) const { return mask[i] == NodeKind::bulk; }
};

/// All-bulk grid of the given extents (mask refined by case setup).
Grid make_grid(int d, std::array<int, 3> dims, std::array<bool, 3> periodic);

/// Checks the mask contract: non-periodic boundary layers are non-bulk.
bool grid_mask_valid(const Grid& g);

/// One bounce-back link: population arriving at `node` along direction `dir`
/// would have streamed out of the solid node `solid`.
struct BoundaryLink {
  std::int32_t node;
  std::int32_t solid;
  std::int16_t dir;
};

/// Immutable geometry bundle shared by all passes: stencil, grid, the
/// periodic-wrap neighbor table, and the precomputed bounce-back links.
/// `simple` marks bulk nodes whose whole neighborhood is bulk and reachable
/// by the constant interior offsets `delta` (no wrap); the SIMD fast paths
/// of the passes only run on blocks of simple nodes.
struct Domain {
  Stencil stencil;
  Grid grid;
  std::vector<std::int32_t> nbr;     // grid.n()*q, node-major
  std::vector<BoundaryLink> links;   // ascending (node, dir)
  std::vector<std::uint8_t> simple;  // 1 = interior fast-path node
  std::array<long, kMaxQ> delta{};   // interior neighbor offsets

  std::int32_t neighbor(long node, int i) const {
    return nbr[node * stencil.q + i];
  }
};

Domain make_domain(const Stencil& s, const Grid& g);

}  // namespace felbm
