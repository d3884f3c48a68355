#pragma once

#include <optional>
#include <vector>

#include "felbm/cases.hpp"

namespace felbm {

/// Per-sample droplet geometry and budget diagnostics.
struct DropletMetrics {
  long step = 0;
  double tbar = 0.0;            // rate * step
  double deformation = 0.0;     // (L - B)/(L + B); NaN when undefined
  double theta_deg = 0.0;       // inclination vs the flow axis; NaN when undefined
  long fragments = 0;           // connected phi > 0 regions
  double mass_c1 = 0.0;         // sum (1 + phi)/2 over bulk nodes
  double total_rho = 0.0;
  double total_phi = 0.0;
  double free_energy = 0.0;
  double axis_long = 0.0;       // L
  double axis_short = 0.0;      // B
};

struct AxisLengths {
  double L = 0.0;
  double B = 0.0;
  double D = 0.0;
};

/// Sub-node phi = 0 crossings: linear-interpolation roots on every grid
/// edge between bulk nodes (periodic wrap edges included).
std::vector<std::array<double, 3>> interface_points(
    const std::vector<double>& phi, const Grid& grid);

std::array<double, 3> centroid_of(const std::vector<std::array<double, 3>>& pts);

/// Axis-aligned mode: half extents along the coordinate axes.
/// Inclined mode: min/max point distance from the centroid (concentric
/// circles). Throws on fewer than 8 points.
AxisLengths measure_deformation(const std::vector<std::array<double, 3>>& pts,
                                const std::array<double, 3>& centroid,
                                MeasureMode mode);

/// Angle between the flow axis (x) and the farthest interface point,
/// folded into [0, 90] degrees; nullopt for near-circular droplets
/// (D < 0.005, inclination undefined).
std::optional<double> measure_inclination(
    const std::vector<std::array<double, 3>>& pts,
    const std::array<double, 3>& centroid);

/// Connected components of {phi > 0} under face adjacency (periodic axes
/// wrap); returns sum (1 + phi)/2 per component in discovery order.
std::vector<double> detect_fragments(const std::vector<double>& phi,
                                     const Grid& grid);

double mass_c1(const std::vector<double>& phi, const Grid& grid);

/// Full metrics sample of the current state (fields must be current).
DropletMetrics collect_metrics(const SimulationState& st, const Domain& dom,
                               const FreeEnergyParams& fe, double rate,
                               MeasureMode mode);

}  // namespace felbm
