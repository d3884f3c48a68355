#include "felbm/calibrate.hpp"

#include <cmath>

#include "felbm/errors.hpp"

namespace felbm {

namespace {

CaseConfig synthetic_config(const LatticeParams& lp, long steps,
                            long sample_every, const std::string& output_dir) {
  CaseConfig cfg;
  cfg.kind = CaseKind::shear2d;
  cfg.a = lp.a;
  cfg.groups = recover_groups(lp);
  cfg.rate = lp.rate;
  cfg.tau_g = lp.fe.tau_g;
  cfg.pe_a = lp.pe_a;
  cfg.droplet = false;
  cfg.steps = steps;
  cfg.sample_every = sample_every;
  cfg.dump_every = 0;
  cfg.output_dir = output_dir;
  cfg.measure = MeasureMode::inclined;
  return cfg;
}

SimulationCase bare_case(Domain dom, const LatticeParams& lp, CaseConfig cfg) {
  SimulationCase sc;
  sc.state = allocate_state(dom.grid, dom.stencil);
  std::fill(sc.state.rho.begin(), sc.state.rho.end(), 1.0);
  std::fill(sc.state.phi.begin(), sc.state.phi.end(), -1.0);
  sc.dom = std::move(dom);
  sc.params = lp;
  sc.cfg = std::move(cfg);
  return sc;
}

void finalize_populations(SimulationCase& sc) {
  chemical_potentials(sc.state, sc.dom, sc.params.fe);
  initialize_populations(sc.state, sc.dom, sc.params.fe, sc.params.relax,
                         sc.cfg.pre_run_steps);
}

}  // namespace

SimulationCase make_planar_strip_case(const LatticeParams& lp, int nx, int ny,
                                      long steps, long sample_every,
                                      const std::string& output_dir) {
  const Stencil stencil = make_stencil(StencilKind::D2Q9);
  Grid grid = make_grid(2, {nx, ny, 1}, {true, true, false});
  SimulationCase sc = bare_case(make_domain(stencil, grid), lp,
                                synthetic_config(lp, steps, sample_every,
                                                 output_dir));
  const double x1 = 0.25 * nx, x2 = 0.75 * nx;
  const double s2xi = std::sqrt(2.0) * lp.xi;
  int x, y, z;
  for (long i = 0; i < sc.dom.grid.n(); ++i) {
    sc.dom.grid.coords(i, x, y, z);
    sc.state.phi[i] =
        -1.0 + std::tanh((x - x1) / s2xi) - std::tanh((x - x2) / s2xi);
  }
  finalize_populations(sc);
  return sc;
}

SimulationCase make_periodic_box_case(const LatticeParams& lp,
                                      std::array<int, 3> dims, int d,
                                      double droplet_radius, long steps,
                                      long sample_every,
                                      const std::string& output_dir) {
  const Stencil stencil =
      make_stencil(d == 3 ? StencilKind::D3Q19 : StencilKind::D2Q9);
  Grid grid = make_grid(d, dims, {true, true, d == 3});
  SimulationCase sc = bare_case(make_domain(stencil, grid), lp,
                                synthetic_config(lp, steps, sample_every,
                                                 output_dir));
  if (droplet_radius > 0.0) {
    sc.cfg.droplet = true;
    const std::array<double, 3> center{(dims[0] - 1) / 2.0, (dims[1] - 1) / 2.0,
                                       d == 3 ? (dims[2] - 1) / 2.0 : 0.0};
    fill_droplet(sc.state, sc.dom.grid, center, droplet_radius, lp.xi);
  }
  finalize_populations(sc);
  return sc;
}

SimulationCase make_closed_box_case(const LatticeParams& lp,
                                    std::array<int, 3> dims, int d,
                                    double droplet_radius, long steps,
                                    long sample_every,
                                    const std::string& output_dir) {
  const Stencil stencil =
      make_stencil(d == 3 ? StencilKind::D3Q19 : StencilKind::D2Q9);
  Grid grid = make_grid(d, dims, {false, false, false});
  std::vector<BoundarySpec> specs;
  for (int axis = 0; axis < d; ++axis) {
    specs.push_back(BoundarySpec::moving_wall(axis, false, {0.0, 0.0, 0.0}));
    specs.push_back(BoundarySpec::moving_wall(axis, true, {0.0, 0.0, 0.0}));
  }
  apply_boundary_masks(grid, stencil, specs);
  SimulationCase sc = bare_case(make_domain(stencil, grid), lp,
                                synthetic_config(lp, steps, sample_every,
                                                 output_dir));
  sc.specs = std::move(specs);
  if (droplet_radius > 0.0) {
    sc.cfg.droplet = true;
    const std::array<double, 3> center{(dims[0] - 1) / 2.0, (dims[1] - 1) / 2.0,
                                       d == 3 ? (dims[2] - 1) / 2.0 : 0.0};
    fill_droplet(sc.state, sc.dom.grid, center, droplet_radius, lp.xi);
  }
  assign_wall_velocities(sc.state, sc.dom.grid, sc.specs);
  finalize_populations(sc);
  return sc;
}

TanhFit fit_planar_profile(const SimulationState& st, const Domain& dom) {
  const Grid& g = dom.grid;
  const int nx = g.dims[0];
  std::vector<double> prof(nx, 0.0);
  std::vector<long> cnt(nx, 0);
  int x, y, z;
  for (long i = 0; i < g.n(); ++i) {
    if (!g.is_bulk(i)) continue;
    g.coords(i, x, y, z);
    prof[x] += st.phi[i];
    ++cnt[x];
  }
  for (int k = 0; k < nx; ++k) {
    if (cnt[k] == 0) throw NumericalError("empty profile column");
    prof[k] /= static_cast<double>(cnt[k]);
  }

  TanhFit fit;
  double sq_sum = 0.0;
  long sq_n = 0;
  const int window = std::min(16, nx / 4 - 1);
  for (int k = 0; k < nx; ++k) {
    const double p0 = prof[k];
    const double p1 = prof[(k + 1) % nx];
    if ((p0 > 0.0) == (p1 > 0.0)) continue;
    const double sign = (p1 > p0) ? 1.0 : -1.0;
    double delta = p0 / (p0 - p1);  // crossing offset in [0,1)
    // slope-based width start
    double xi = 1.0;
    {
      const double pm = prof[(k - 1 + nx) % nx];
      const double slope = 0.5 * std::abs(p1 - pm);
      if (slope > 1e-12) xi = 1.0 / (std::sqrt(2.0) * slope);
    }
    // Gauss-Newton on v_j ~ sign*tanh((j - delta)/(sqrt(2) xi))
    for (int it = 0; it < 30; ++it) {
      double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
      for (int j = -window; j <= window; ++j) {
        const double v = prof[(k + j + nx) % nx];
        const double s2xi = std::sqrt(2.0) * xi;
        const double uu = (j - delta) / s2xi;
        const double th = std::tanh(uu);
        const double sech2 = 1.0 - th * th;
        const double r = v - sign * th;
        const double jd = -sign * sech2 / s2xi;          // d/d delta
        const double jx = -sign * sech2 * uu / xi;       // d/d xi
        a11 += jd * jd;
        a12 += jd * jx;
        a22 += jx * jx;
        b1 += jd * r;
        b2 += jx * r;
      }
      const double det = a11 * a22 - a12 * a12;
      if (std::abs(det) < 1e-30) break;
      const double dd = (a22 * b1 - a12 * b2) / det;
      const double dx = (a11 * b2 - a12 * b1) / det;
      delta += dd;
      xi += dx;
      if (!(xi > 0.05)) xi = 0.05;
      if (std::abs(dd) + std::abs(dx) < 1e-14) break;
    }
    for (int j = -window; j <= window; ++j) {
      const double v = prof[(k + j + nx) % nx];
      const double r =
          v - sign * std::tanh((j - delta) / (std::sqrt(2.0) * xi));
      sq_sum += r * r;
      ++sq_n;
    }
    fit.xi += xi;
    ++fit.interfaces;
  }
  if (fit.interfaces == 0) throw NumericalError("no interface to fit");
  fit.xi /= fit.interfaces;
  fit.rms = std::sqrt(sq_sum / static_cast<double>(sq_n));
  return fit;
}

double laplace_pressure_jump(const SimulationState& st, const Domain& dom,
                             const FreeEnergyParams& fe) {
  const Grid& g = dom.grid;
  double p_in = 0.0;
  int n_in = 0;
  const int cx0 = (g.dims[0] - 1) / 2, cx1 = g.dims[0] / 2;
  const int cy0 = (g.dims[1] - 1) / 2, cy1 = g.dims[1] / 2;
  const int cz0 = g.d == 3 ? (g.dims[2] - 1) / 2 : 0;
  const int cz1 = g.d == 3 ? g.dims[2] / 2 : 0;
  for (int x = cx0; x <= cx1; ++x)
    for (int y = cy0; y <= cy1; ++y)
      for (int z = cz0; z <= cz1; ++z) {
        const long i = g.index(x, y, z);
        p_in += bulk_pressure(st.rho[i], st.phi[i], fe);
        ++n_in;
      }
  double p_out = 0.0;
  int n_out = 0;
  for (int x = 0; x < g.dims[0]; x += g.dims[0] - 1)
    for (int y = 0; y < g.dims[1]; y += g.dims[1] - 1)
      for (int z = 0; z < g.dims[2]; z += std::max(1, g.dims[2] - 1)) {
        const long i = g.index(x, y, z);
        if (!g.is_bulk(i)) continue;
        p_out += bulk_pressure(st.rho[i], st.phi[i], fe);
        ++n_out;
        if (g.dims[2] == 1) break;
      }
  if (n_out == 0) throw NumericalError("no bulk corner nodes for far field");
  return p_in / n_in - p_out / n_out;
}

double max_force(const SimulationState& st, const Domain& dom) {
  double m = 0.0;
  for (long i = 0; i < st.n; ++i) {
    if (!dom.grid.is_bulk(i)) continue;
    double s2 = 0.0;
    for (int a = 0; a < st.d; ++a) {
      const double F = st.force[static_cast<long>(a) * st.n + i];
      s2 += F * F;
    }
    m = std::max(m, s2);
  }
  return std::sqrt(m);
}

StagnationRates stagnation_rates(const SimulationState& st, const Domain& dom) {
  const Grid& g = dom.grid;
  const int cx = (g.dims[0] - 1) / 2;
  const int cy = (g.dims[1] - 1) / 2;
  StagnationRates r;
  const long n = st.n;
  r.dudx = 0.5 * (st.u[g.index(cx + 1, cy)] - st.u[g.index(cx - 1, cy)]);
  r.dvdy = 0.5 * (st.u[n + g.index(cx, cy + 1)] - st.u[n + g.index(cx, cy - 1)]);
  return r;
}

SigmaXiCalibration calibrate_sigma_xi(const LatticeParams& lp,
                                      double droplet_radius, long planar_steps,
                                      long droplet_steps,
                                      const std::string& output_dir) {
  SigmaXiCalibration out;

  SimulationCase strip = make_planar_strip_case(
      lp, 128, 4, planar_steps, std::max<long>(1, planar_steps / 10),
      output_dir.empty() ? "" : output_dir + "/planar");
  const RunResult rr = run_simulation(strip, !output_dir.empty());
  if (rr.series.size() >= 2) {
    const double a = rr.series[rr.series.size() - 2].free_energy;
    const double b = rr.series.back().free_energy;
    if (std::abs(b - a) > 1e-6 * std::abs(b))
      throw NumericalError("planar relaxation did not settle in the step budget");
  }
  const TanhFit fit = fit_planar_profile(strip.state, strip.dom);
  out.xi = fit.xi;
  out.fit_rms = fit.rms;

  const int size = static_cast<int>(std::lround(8.0 * droplet_radius));
  SimulationCase drop = make_periodic_box_case(
      lp, {size, size, 1}, 2, droplet_radius, droplet_steps,
      std::max<long>(1, droplet_steps / 10),
      output_dir.empty() ? "" : output_dir + "/droplet");
  run_simulation(drop, !output_dir.empty());
  out.delta_p = laplace_pressure_jump(drop.state, drop.dom, lp.fe);
  out.sigma = out.delta_p * droplet_radius;
  out.max_spurious = max_speed(drop.state, drop.dom);
  return out;
}

ExtensionCalibration calibrate_extension_rate(const CaseConfig& cfg,
                                              long max_steps, double tol) {
  CaseConfig cc = cfg;
  cc.droplet = false;
  cc.steps = max_steps;
  cc.dump_every = 0;
  if (cc.sample_every <= 0 || cc.sample_every > max_steps)
    cc.sample_every = std::max<long>(1, max_steps / 100);
  SimulationCase sc = init_fourroller_case(cc);

  ExtensionCalibration out;
  double prev = 0.0;
  bool settled = false;
  run_simulation(sc, false, [&](const DropletMetrics& m) {
    const StagnationRates r = stagnation_rates(sc.state, sc.dom);
    out.dudx = r.dudx;
    out.dvdy = r.dvdy;
    out.steps_run = m.step;
    const double eps = r.dudx;
    if (m.step > 0 && std::abs(eps - prev) <= tol * std::abs(eps)) {
      settled = true;
      return true;
    }
    prev = eps;
    return false;
  });
  if (!settled && cc.omega != 0.0)
    throw NumericalError("extension rate did not settle in the step budget");
  out.eps = out.dudx;
  out.eps_per_omega = sc.cfg.omega != 0.0 ? out.eps / sc.cfg.omega : 0.0;
  return out;
}

}  // namespace felbm
