#include "felbm/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "felbm/config.hpp"
#include "felbm/errors.hpp"
#include "felbm/vtk.hpp"

namespace felbm {

std::string metrics_csv_header() {
  return "step,tbar,D,theta_deg,fragments,mass_c1,sum_rho,sum_phi,free_energy";
}

std::string metrics_csv_row(const DropletMetrics& m) {
  std::ostringstream os;
  os << m.step << "," << fmt_double(m.tbar) << "," << fmt_double(m.deformation)
     << "," << fmt_double(m.theta_deg) << "," << m.fragments << ","
     << fmt_double(m.mass_c1) << "," << fmt_double(m.total_rho) << ","
     << fmt_double(m.total_phi) << "," << fmt_double(m.free_energy);
  return os.str();
}

RunResult run_simulation(SimulationCase& sc, bool write_files,
                         const StopCondition& stop) {
  const CaseConfig& cfg = sc.cfg;
  SimulationState& st = sc.state;
  const Domain& dom = sc.dom;
  const FreeEnergyParams& fe = sc.params.fe;
  const RelaxationSetup& rx = sc.params.relax;
  const long dump_every =
      cfg.dump_every < 0 ? cfg.sample_every : cfg.dump_every;

  std::ofstream csv;
  if (write_files) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + cfg.output_dir);
    write_manifest(sc, cfg.output_dir + "/manifest.cfg");
    csv.open(cfg.output_dir + "/metrics.csv", std::ios::binary);
    if (!csv) throw IoError("cannot write " + cfg.output_dir + "/metrics.csv");
    csv << metrics_csv_header() << "\n";
  }

  RunResult result;
  for (long t = 0;; ++t) {
    compute_moments(st, dom);
    chemical_potentials(st, dom, fe);

    const bool last = (t == cfg.steps);
    if (t % cfg.sample_every == 0 || last) {
      body_force(st, dom);  // refresh u against the current force
      DropletMetrics m = collect_metrics(st, dom, fe, cfg.rate, cfg.measure);
      result.series.push_back(m);
      if (write_files) {
        csv << metrics_csv_row(m) << "\n";
        if (!csv) throw IoError("write failed: " + cfg.output_dir + "/metrics.csv");
        if (dump_every > 0 && (t % dump_every == 0 || last)) {
          char name[32];
          std::snprintf(name, sizeof(name), "fields_%08ld.vtk", t);
          write_vtk(st, dom.grid, cfg.output_dir + "/" + name, st.step, m.tbar);
        }
      }
      if (stop && stop(m)) break;
    }
    if (last) break;

    result.negative_population_warnings += force_collide_stream(st, dom, fe, rx);
    ++st.step;
  }

  if (result.negative_population_warnings > 0)
    std::cerr << "warning: " << result.negative_population_warnings
              << " negative post-collision populations (instability indicator)\n";
  return result;
}

}  // namespace felbm
