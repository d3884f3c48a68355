#include "felbm/boundary.hpp"

#include <cmath>

#include "felbm/errors.hpp"

namespace felbm {

namespace {
constexpr double kWallSpeedCap = 0.15;  // Mach-number guard

double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

bool inside_obstacle(const BoundarySpec& ob, int x, int y, int z) {
  const double dx = x - ob.center[0];
  const double dy = y - ob.center[1];
  const double dz = z - ob.center[2];
  return dx * dx + dy * dy + dz * dz < ob.radius * ob.radius;  // strict
}
}  // namespace

BoundarySpec BoundarySpec::periodic_axis(int axis) {
  BoundarySpec b;
  b.kind = Kind::periodic;
  b.axis = axis;
  return b;
}

BoundarySpec BoundarySpec::moving_wall(int axis, bool max_side,
                                       std::array<double, 3> velocity) {
  BoundarySpec b;
  b.kind = Kind::moving_wall;
  b.axis = axis;
  b.max_side = max_side;
  b.wall_velocity = velocity;
  return b;
}

BoundarySpec BoundarySpec::rotating_obstacle(std::array<double, 3> center,
                                             double radius, double omega) {
  BoundarySpec b;
  b.kind = Kind::rotating_obstacle;
  b.center = center;
  b.radius = radius;
  b.omega = omega;
  return b;
}

void apply_boundary_masks(Grid& grid, const Stencil& stencil,
                          const std::vector<BoundarySpec>& specs) {
  int x, y, z;
  for (const BoundarySpec& b : specs) {
    switch (b.kind) {
      case BoundarySpec::Kind::periodic:
        grid.periodic[b.axis] = true;
        break;
      case BoundarySpec::Kind::moving_wall: {
        if (norm3(b.wall_velocity) >= kWallSpeedCap)
          throw ConfigError("wall velocity exceeds Mach guard");
        const int layer = b.max_side ? grid.dims[b.axis] - 1 : 0;
        for (long i = 0; i < grid.n(); ++i) {
          grid.coords(i, x, y, z);
          const int v = (b.axis == 0 ? x : (b.axis == 1 ? y : z));
          if (v == layer) grid.mask[i] = NodeKind::moving_wall;
        }
        break;
      }
      case BoundarySpec::Kind::rotating_obstacle: {
        if (std::abs(b.omega) * (b.radius + 1.0) >= kWallSpeedCap)
          throw ConfigError("obstacle surface speed exceeds Mach guard");
        for (int a = 0; a < grid.d; ++a) {
          if (b.center[a] - b.radius < 1.0 ||
              b.center[a] + b.radius > grid.dims[a] - 2.0)
            throw ConfigError("obstacle overlaps the domain boundary");
        }
        for (long i = 0; i < grid.n(); ++i) {
          grid.coords(i, x, y, z);
          if (!inside_obstacle(b, x, y, z)) continue;
          if (grid.mask[i] != NodeKind::bulk)
            throw ConfigError("obstacle overlaps another boundary");
          grid.mask[i] = NodeKind::obstacle_wall;
        }
        break;
      }
    }
  }
  // demote solid nodes without any bulk stencil neighbor to exterior
  std::vector<NodeKind> refined = grid.mask;
  for (long i = 0; i < grid.n(); ++i) {
    if (grid.mask[i] == NodeKind::bulk) continue;
    grid.coords(i, x, y, z);
    bool touches_bulk = false;
    for (int k = 1; k < stencil.q && !touches_bulk; ++k) {
      int nx = x + stencil.c[k][0];
      int ny = y + stencil.c[k][1];
      int nz = z + stencil.c[k][2];
      if (grid.periodic[0]) nx = (nx + grid.dims[0]) % grid.dims[0];
      if (grid.periodic[1]) ny = (ny + grid.dims[1]) % grid.dims[1];
      if (grid.periodic[2]) nz = (nz + grid.dims[2]) % grid.dims[2];
      if (nx < 0 || nx >= grid.dims[0] || ny < 0 || ny >= grid.dims[1] ||
          nz < 0 || nz >= grid.dims[2])
        continue;
      touches_bulk = grid.is_bulk(grid.index(nx, ny, nz));
    }
    if (!touches_bulk) refined[i] = NodeKind::exterior;
  }
  grid.mask = std::move(refined);
}

void assign_wall_velocities(SimulationState& st, const Grid& grid,
                            const std::vector<BoundarySpec>& specs) {
  const long n = grid.n();
  int x, y, z;
  for (long i = 0; i < n; ++i) {
    if (grid.is_bulk(i)) continue;
    for (int a = 0; a < grid.d; ++a) st.u[static_cast<long>(a) * n + i] = 0.0;
  }
  for (const BoundarySpec& b : specs) {
    if (b.kind == BoundarySpec::Kind::periodic) continue;
    for (long i = 0; i < n; ++i) {
      if (grid.is_bulk(i)) continue;
      grid.coords(i, x, y, z);
      if (b.kind == BoundarySpec::Kind::moving_wall) {
        const int v = (b.axis == 0 ? x : (b.axis == 1 ? y : z));
        const int layer = b.max_side ? grid.dims[b.axis] - 1 : 0;
        if (v != layer) continue;
        for (int a = 0; a < grid.d; ++a)
          st.u[static_cast<long>(a) * n + i] = b.wall_velocity[a];
      } else {
        if (!inside_obstacle(b, x, y, z)) continue;
        st.u[0 * n + i] = -b.omega * (y - b.center[1]);
        st.u[1 * n + i] = b.omega * (x - b.center[0]);
      }
    }
  }
}

}  // namespace felbm
