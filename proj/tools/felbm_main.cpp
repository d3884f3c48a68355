// Command-line front end: run / calibrate / analyze / sweep.
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure, 4 IO error.

#include <filesystem>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "felbm/calibrate.hpp"
#include "felbm/config.hpp"
#include "felbm/errors.hpp"
#include "felbm/vtk.hpp"

namespace {

using namespace felbm;

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int cmd_run(const std::string& cfg_path, const std::string& out_override,
            int threads_override) {
  CaseConfig cfg = parse_case_config(cfg_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  if (threads_override > 0) cfg.threads = threads_override;
  set_threads(cfg.threads);
  SimulationCase sc = build_case(cfg);
  const RunResult rr = run_simulation(sc);
  const DropletMetrics& last = rr.series.back();
  std::cout << "steps = " << last.step << "\n"
            << "tbar = " << fmt_double(last.tbar) << "\n"
            << "D = " << fmt_double(last.deformation) << "\n"
            << "theta_deg = " << fmt_double(last.theta_deg) << "\n"
            << "fragments = " << last.fragments << "\n"
            << "outputs = " << sc.cfg.output_dir << "\n";
  return 0;
}

int cmd_calibrate(const std::string& cfg_path, const std::string& out_override,
                  int threads_override, long planar_steps, long droplet_steps,
                  long eps_steps) {
  CaseConfig cfg = parse_case_config(cfg_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  if (threads_override > 0) cfg.threads = threads_override;
  set_threads(cfg.threads);

  CaseConfig rc = cfg;
  if (rc.rate <= 0.0) rc.rate = auto_rate(rc);
  const LatticeParams lp =
      solve_lattice_params(rc.groups, rc.a, rc.rate, rc.tau_g, rc.pe_a);
  const SigmaXiCalibration sx = calibrate_sigma_xi(
      lp, rc.a, planar_steps, droplet_steps, rc.output_dir);
  std::cout << "sigma_default = " << fmt_double(lp.sigma) << "\n"
            << "sigma_meas = " << fmt_double(sx.sigma) << "\n"
            << "xi_default = " << fmt_double(lp.xi) << "\n"
            << "xi_meas = " << fmt_double(sx.xi) << "\n"
            << "fit_rms = " << fmt_double(sx.fit_rms) << "\n"
            << "delta_p = " << fmt_double(sx.delta_p) << "\n"
            << "max_spurious_u = " << fmt_double(sx.max_spurious) << "\n";
  if (cfg.kind == CaseKind::fourroller2d) {
    const ExtensionCalibration ec = calibrate_extension_rate(rc, eps_steps);
    std::cout << "eps_meas = " << fmt_double(ec.eps) << "\n"
              << "dvdy_meas = " << fmt_double(ec.dvdy) << "\n"
              << "eps_per_omega = " << fmt_double(ec.eps_per_omega) << "\n";
  }
  return 0;
}

int cmd_analyze(const std::vector<std::string>& files, bool periodic,
                const std::string& measure) {
  const MeasureMode mode =
      measure == "axis" ? MeasureMode::axis_aligned : MeasureMode::inclined;
  std::cout << metrics_csv_header() << "\n";
  for (const std::string& path : files) {
    const VtkFields vf = read_vtk(path);
    const auto phi_it = vf.scalars.find("phi");
    if (phi_it == vf.scalars.end()) throw IoError(path + ": no phi field");
    const int d = vf.dims[2] > 1 ? 3 : 2;
    Grid grid = make_grid(d, vf.dims, {periodic, periodic, periodic && d == 3});

    DropletMetrics m;
    m.step = vf.step;
    m.tbar = vf.tbar;
    const std::vector<double>& phi = phi_it->second;
    m.fragments = static_cast<long>(detect_fragments(phi, grid).size());
    m.mass_c1 = mass_c1(phi, grid);
    for (double v : phi) m.total_phi += v;
    if (const auto rho_it = vf.scalars.find("rho"); rho_it != vf.scalars.end())
      for (double v : rho_it->second) m.total_rho += v;
    m.free_energy = std::numeric_limits<double>::quiet_NaN();
    m.deformation = std::numeric_limits<double>::quiet_NaN();
    m.theta_deg = std::numeric_limits<double>::quiet_NaN();
    const auto pts = interface_points(phi, grid);
    if (pts.size() >= 8) {
      const auto c = centroid_of(pts);
      m.deformation = measure_deformation(pts, c, mode).D;
      if (const auto th = measure_inclination(pts, c)) m.theta_deg = *th;
    }
    std::cout << metrics_csv_row(m) << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& cfg_path, const std::vector<double>& ca_list,
              const std::string& out_override, int threads_override) {
  CaseConfig base = parse_case_config(cfg_path);
  if (!out_override.empty()) base.output_dir = out_override;
  if (threads_override > 0) base.threads = threads_override;
  set_threads(base.threads);
  if (ca_list.empty()) throw ConfigError("sweep needs at least one --ca value");

  std::error_code ec;
  std::filesystem::create_directories(base.output_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + base.output_dir);
  const std::string sweep_path = base.output_dir + "/sweep.csv";
  std::ofstream sweep(sweep_path, std::ios::binary);
  if (!sweep) throw IoError("cannot write " + sweep_path);
  sweep << "ca," << metrics_csv_header() << "\n";

  for (double ca : ca_list) {
    CaseConfig cfg = base;
    cfg.groups.ca = ca;
    cfg.output_dir = base.output_dir + "/ca_" + fmt_double(ca);
    SimulationCase sc = build_case(cfg);
    std::cerr << "sweep: ca = " << ca << " -> " << cfg.output_dir << "\n";
    const RunResult rr = run_simulation(sc);
    for (const DropletMetrics& m : rr.series)
      sweep << fmt_double(ca) << "," << metrics_csv_row(m) << "\n";
    if (!sweep) throw IoError("write failed: " + sweep_path);
  }
  std::cout << "sweep CSV: " << sweep_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary-mixture free-energy lattice Boltzmann solver"};
  app.require_subcommand(1);

  std::string cfg_path, out_override, measure = "inclined";
  int threads = 0;
  long planar_steps = 20000, droplet_steps = 50000, eps_steps = 200000;
  std::vector<std::string> vtk_files;
  std::vector<double> ca_list;
  bool periodic = false;

  auto* run = app.add_subcommand("run", "advance a configured case, write CSV/VTK");
  run->add_option("config", cfg_path, "flat key = value config file")->required();
  run->add_option("-o,--output-dir", out_override, "override output_dir");
  run->add_option("--threads", threads, "worker thread count (0 = default)");

  auto* cal = app.add_subcommand(
      "calibrate", "measure sigma and xi (and eps for four-roller configs)");
  cal->add_option("config", cfg_path)->required();
  cal->add_option("-o,--output-dir", out_override);
  cal->add_option("--threads", threads);
  cal->add_option("--planar-steps", planar_steps, "planar relaxation budget");
  cal->add_option("--droplet-steps", droplet_steps, "Laplace relaxation budget");
  cal->add_option("--eps-steps", eps_steps, "extension-rate budget");

  auto* ana = app.add_subcommand("analyze", "recompute droplet metrics from dumps");
  ana->add_option("files", vtk_files, "VTK field dumps")->required();
  ana->add_flag("--periodic", periodic, "treat all axes as periodic");
  ana->add_option("--measure", measure, "inclined|axis")
      ->check(CLI::IsMember({"inclined", "axis"}));

  auto* swp = app.add_subcommand("sweep", "serial capillary-number sweep");
  swp->add_option("config", cfg_path)->required();
  swp->add_option("--ca", ca_list, "capillary numbers to run")
      ->required()
      ->delimiter(',');
  swp->add_option("-o,--output-dir", out_override);
  swp->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(cfg_path, out_override, threads);
    if (cal->parsed())
      return cmd_calibrate(cfg_path, out_override, threads, planar_steps,
                           droplet_steps, eps_steps);
    if (ana->parsed()) return cmd_analyze(vtk_files, periodic, measure);
    if (swp->parsed()) return cmd_sweep(cfg_path, ca_list, out_override, threads);
  } catch (const felbm::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const felbm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const felbm::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
