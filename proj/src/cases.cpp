#include "felbm/cases.hpp"

#include <cmath>

#include "felbm/errors.hpp"

namespace felbm {

namespace {

long lround_pos(double v) { return static_cast<long>(std::lround(v)); }

// largest rate with tau <= kTauCap given Re and a
constexpr double kTauCap = 1.9;

double tau_bound_rate(const CaseConfig& cfg) {
  return (kTauCap - 0.5) * kCs2 * cfg.groups.re / (cfg.a * cfg.a);
}

}  // namespace

double auto_rate(const CaseConfig& cfg) {
  const double by_tau = tau_bound_rate(cfg);
  double by_mach;
  if (cfg.kind == CaseKind::fourroller2d) {
    const double span = cfg.domain_ratio[0] * cfg.a;
    if (cfg.mode == RollerMode::roller) {
      // surface speed (rate/eps_per_omega)*(R+1) stays under the cap
      const double radius = span / 8.0;
      by_mach = cfg.u_cap * cfg.eps_per_omega / (radius + 1.0);
    } else {
      // imposed boundary velocity peaks at the corners
      by_mach = cfg.u_cap / (0.75 * span * std::sqrt(2.0));
    }
  } else {
    const double height = cfg.domain_ratio[1] * cfg.a;  // wall separation
    by_mach = 2.0 * cfg.u_cap / height;
  }
  return 0.95 * std::min(by_tau, by_mach);
}

void fill_droplet(SimulationState& st, const Grid& grid,
                  const std::array<double, 3>& center, double a, double xi) {
  const double s2xi = std::sqrt(2.0) * xi;
  int x, y, z;
  for (long i = 0; i < grid.n(); ++i) {
    if (!grid.is_bulk(i)) continue;
    grid.coords(i, x, y, z);
    double r2 = 0.0;
    const double dx = x - center[0];
    const double dy = y - center[1];
    const double dz = z - center[2];
    r2 = dx * dx + dy * dy + (grid.d == 3 ? dz * dz : 0.0);
    st.phi[i] = -std::tanh((std::sqrt(r2) - a) / s2xi);
  }
}

namespace {

SimulationCase finish_case(Domain dom, std::vector<BoundarySpec> specs,
                           const CaseConfig& cfg, const LatticeParams& lp,
                           const std::array<double, 3>& center) {
  SimulationCase sc;
  sc.state = allocate_state(dom.grid, dom.stencil);
  std::fill(sc.state.rho.begin(), sc.state.rho.end(), 1.0);
  std::fill(sc.state.phi.begin(), sc.state.phi.end(), -1.0);
  if (cfg.droplet) fill_droplet(sc.state, dom.grid, center, cfg.a, lp.xi);
  assign_wall_velocities(sc.state, dom.grid, specs);
  chemical_potentials(sc.state, dom, lp.fe);
  initialize_populations(sc.state, dom, lp.fe, lp.relax, cfg.pre_run_steps);
  sc.dom = std::move(dom);
  sc.specs = std::move(specs);
  sc.params = lp;
  sc.cfg = cfg;
  return sc;
}

}  // namespace

SimulationCase init_shear_case(const CaseConfig& cfg) {
  if (cfg.kind != CaseKind::shear2d && cfg.kind != CaseKind::shear3d)
    throw ConfigError("init_shear_case needs a shear case kind");
  CaseConfig rc = cfg;
  if (rc.rate <= 0.0) rc.rate = auto_rate(rc);
  if (!rc.measure_set) rc.measure = MeasureMode::inclined;
  const int d = (rc.kind == CaseKind::shear3d) ? 3 : 2;
  const Stencil stencil =
      make_stencil(d == 3 ? StencilKind::D3Q19 : StencilKind::D2Q9);

  std::array<int, 3> dims{1, 1, 1};
  dims[0] = static_cast<int>(lround_pos(rc.domain_ratio[0] * rc.a));
  dims[1] = static_cast<int>(lround_pos(rc.domain_ratio[1] * rc.a)) + 2;
  if (d == 3) dims[2] = static_cast<int>(lround_pos(rc.domain_ratio[2] * rc.a));

  const double height = dims[1] - 2;  // halfway-wall separation
  if (rc.droplet && rc.a >= 0.45 * height)
    throw ConfigError("droplet touches the walls (a >= 0.45 H)");

  const LatticeParams lp =
      solve_lattice_params(rc.groups, rc.a, rc.rate, rc.tau_g, rc.pe_a);
  const double wall_u = rc.rate * height / 2.0;

  Grid grid = make_grid(d, dims, {true, false, d == 3});
  std::vector<BoundarySpec> specs;
  specs.push_back(BoundarySpec::periodic_axis(0));
  if (d == 3) specs.push_back(BoundarySpec::periodic_axis(2));
  specs.push_back(BoundarySpec::moving_wall(1, false, {-wall_u, 0.0, 0.0}));
  specs.push_back(BoundarySpec::moving_wall(1, true, {wall_u, 0.0, 0.0}));
  apply_boundary_masks(grid, stencil, specs);

  const std::array<double, 3> center{(dims[0] - 1) / 2.0, (dims[1] - 1) / 2.0,
                                     d == 3 ? (dims[2] - 1) / 2.0 : 0.0};
  SimulationCase sc =
      finish_case(make_domain(stencil, grid), std::move(specs), rc, lp, center);
  sc.wall_speed = wall_u;
  return sc;
}

SimulationCase init_fourroller_case(const CaseConfig& cfg) {
  if (cfg.kind != CaseKind::fourroller2d)
    throw ConfigError("init_fourroller_case needs kind fourroller2d");
  CaseConfig rc = cfg;
  if (rc.rate <= 0.0) rc.rate = auto_rate(rc);
  if (!rc.measure_set) rc.measure = MeasureMode::axis_aligned;
  const Stencil stencil = make_stencil(StencilKind::D2Q9);

  // odd node count so the stagnation point sits on a node
  int nx = static_cast<int>(lround_pos(rc.domain_ratio[0] * rc.a)) + 2;
  if (nx % 2 == 0) ++nx;
  const std::array<int, 3> dims{nx, nx, 1};
  const double span = nx - 2;  // between the no-slip planes
  const double cx = (nx - 1) / 2.0;
  const std::array<double, 3> center{cx, cx, 0.0};

  const LatticeParams lp =
      solve_lattice_params(rc.groups, rc.a, rc.rate, rc.tau_g, rc.pe_a);

  Grid grid = make_grid(2, dims, {false, false, false});
  std::vector<BoundarySpec> specs;
  for (int axis = 0; axis < 2; ++axis) {
    specs.push_back(BoundarySpec::moving_wall(axis, false, {0.0, 0.0, 0.0}));
    specs.push_back(BoundarySpec::moving_wall(axis, true, {0.0, 0.0, 0.0}));
  }
  if (rc.mode == RollerMode::roller) {
    if (rc.omega < 0.0) rc.omega = rc.rate / rc.eps_per_omega;
    const double off = std::round(span / 4.0);
    const double radius = std::round(span / 8.0);
    if (rc.droplet &&
        std::hypot(off, off) - radius < rc.a + 3.0 * lp.xi)
      throw ConfigError("droplet overlaps the rollers");
    // diagonal pairs co-rotate: +omega on the main diagonal pulls fluid
    // outward along x, so the center is an extensional stagnation point
    specs.push_back(BoundarySpec::rotating_obstacle({cx + off, cx + off, 0.0},
                                                    radius, rc.omega));
    specs.push_back(BoundarySpec::rotating_obstacle({cx - off, cx - off, 0.0},
                                                    radius, rc.omega));
    specs.push_back(BoundarySpec::rotating_obstacle({cx - off, cx + off, 0.0},
                                                    radius, -rc.omega));
    specs.push_back(BoundarySpec::rotating_obstacle({cx + off, cx - off, 0.0},
                                                    radius, -rc.omega));
  }
  apply_boundary_masks(grid, stencil, specs);

  SimulationCase sc =
      finish_case(make_domain(stencil, grid), std::move(specs), rc, lp, center);

  if (rc.mode == RollerMode::analytic_extension) {
    // imposed u = (eps x, -eps y) relative to the center on the outer walls
    SimulationState& st = sc.state;
    const Grid& g = sc.dom.grid;
    int x, y, z;
    for (long i = 0; i < g.n(); ++i) {
      if (g.is_bulk(i)) continue;
      g.coords(i, x, y, z);
      st.u[0 * st.n + i] = rc.rate * (x - cx);
      st.u[1 * st.n + i] = -rc.rate * (y - cx);
    }
  }
  return sc;
}

SimulationCase build_case(const CaseConfig& cfg) {
  switch (cfg.kind) {
    case CaseKind::shear2d:
    case CaseKind::shear3d:
      return init_shear_case(cfg);
    case CaseKind::fourroller2d:
      return init_fourroller_case(cfg);
  }
  throw ConfigError("unknown case kind");
}

}  // namespace felbm
