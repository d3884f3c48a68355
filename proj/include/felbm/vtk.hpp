#pragma once

#include <map>
#include <string>
#include <vector>

#include "felbm/state.hpp"

namespace felbm {

/// Legacy VTK structured-points ASCII dump of phi, rho, and u.
void write_vtk(const SimulationState& st, const Grid& grid,
               const std::string& path, long step, double tbar);

/// Parsed dump (only what the writer emits is supported).
struct VtkFields {
  std::array<int, 3> dims{1, 1, 1};
  long step = 0;
  double tbar = 0.0;
  std::map<std::string, std::vector<double>> scalars;
  std::map<std::string, std::vector<double>> vectors;  // 3 planes, axis-major
};

VtkFields read_vtk(const std::string& path);

}  // namespace felbm
