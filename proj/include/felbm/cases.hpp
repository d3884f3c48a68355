#pragma once

#include <string>

#include "felbm/boundary.hpp"
#include "felbm/units.hpp"

namespace felbm {

enum class CaseKind { shear2d, shear3d, fourroller2d };
enum class RollerMode { roller, analytic_extension };
enum class MeasureMode { axis_aligned, inclined };

/// Conversion between roller angular speed and the realized extension
/// rate at the stagnation point, measured via the epsilon calibration for
/// the standard geometry (rollers of radius S/8 at (+-S/4, +-S/4), domain
/// ratio 20); overridable per config.
inline constexpr double kDefaultEpsPerOmega = 0.162;

struct CaseConfig {
  CaseKind kind = CaseKind::shear2d;
  double a = 30.0;
  std::array<double, 3> domain_ratio{8.0, 8.0, 8.0};
  DimensionlessGroups groups;
  double rate = 0.0;  // gamma (shear) or eps (extension); 0 = auto scale
  double tau_g = 1.0;
  double pe_a = 0.0;  // 0 = kappa/4
  bool droplet = true;
  RollerMode mode = RollerMode::roller;
  double omega = -1.0;  // < 0 = derive as rate / eps_per_omega
  double eps_per_omega = kDefaultEpsPerOmega;
  long steps = 0;
  long sample_every = 1000;
  long dump_every = -1;  // -1 = sample_every, 0 = no field dumps
  long pre_run_steps = 0;
  std::string output_dir = "out";
  int threads = 0;
  double u_cap = 0.05;  // free-scale Mach target
  MeasureMode measure = MeasureMode::inclined;
  bool measure_set = false;
};

/// A ready-to-run digital twin: geometry, initialized state, lattice
/// parameters, and the resolved configuration (rate/omega filled in).
struct SimulationCase {
  Domain dom;
  SimulationState state;
  LatticeParams params;
  std::vector<BoundarySpec> specs;
  CaseConfig cfg;
  double wall_speed = 0.0;  // shear wall speed U (diagnostic)
};

/// Free-scale choice: largest rate keeping tau in the stability window
/// and the expected |u|max under cfg.u_cap.
double auto_rate(const CaseConfig& cfg);

SimulationCase init_shear_case(const CaseConfig& cfg);
SimulationCase init_fourroller_case(const CaseConfig& cfg);
SimulationCase build_case(const CaseConfig& cfg);

/// phi(r) = -tanh((r - a)/(sqrt(2) xi)): +1 inside the droplet.
void fill_droplet(SimulationState& st, const Grid& grid,
                  const std::array<double, 3>& center, double a, double xi);

}  // namespace felbm
