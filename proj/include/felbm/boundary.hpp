#pragma once

#include <vector>

#include "felbm/state.hpp"

namespace felbm {

/// Velocity boundary condition description. Application happens during
/// streaming through the precomputed link table (halfway bounce-back with
/// momentum correction for f, plain bounce-back for g); this module owns
/// the node classification and the imposed wall-velocity field.
struct BoundarySpec {
  enum class Kind { periodic, moving_wall, rotating_obstacle };
  Kind kind = Kind::periodic;

  int axis = 0;           // periodic, moving_wall
  bool max_side = false;  // moving_wall: face at dims[axis]-1 instead of 0
  std::array<double, 3> wall_velocity{0.0, 0.0, 0.0};

  std::array<double, 3> center{0.0, 0.0, 0.0};  // rotating_obstacle (2D)
  double radius = 0.0;
  double omega = 0.0;

  static BoundarySpec periodic_axis(int axis);
  static BoundarySpec moving_wall(int axis, bool max_side,
                                  std::array<double, 3> velocity);
  static BoundarySpec rotating_obstacle(std::array<double, 3> center,
                                        double radius, double omega);
};

/// Marks wall/obstacle/exterior nodes and periodic flags on the grid.
/// Solid nodes with no bulk neighbor under the stencil become exterior.
/// Throws ConfigError on overlapping obstacles, obstacles crossing the
/// domain boundary, or wall speeds beyond the Mach guard (|u_w| < 0.15).
void apply_boundary_masks(Grid& grid, const Stencil& stencil,
                          const std::vector<BoundarySpec>& specs);

/// Stores the imposed wall velocity in state.u at every non-bulk node
/// (zero where no spec applies; rigid rotation omega x (x - c) on obstacles).
void assign_wall_velocities(SimulationState& st, const Grid& grid,
                            const std::vector<BoundarySpec>& specs);

}  // namespace felbm
