#pragma once

#include <functional>

#include "felbm/analysis.hpp"

namespace felbm {

struct RunResult {
  std::vector<DropletMetrics> series;
  long negative_population_warnings = 0;
};

/// Optional early-stop predicate, checked at every sample.
using StopCondition = std::function<bool(const DropletMetrics&)>;

/// Advances the case through cfg.steps time steps sampling every
/// cfg.sample_every (fields refreshed before each sample). With
/// write_files set, emits metrics.csv, periodic VTK dumps, and the
/// manifest into cfg.output_dir.
RunResult run_simulation(SimulationCase& sc, bool write_files = true,
                         const StopCondition& stop = nullptr);

/// CSV header/row formatting shared by run, sweep, and analyze.
std::string metrics_csv_header();
std::string metrics_csv_row(const DropletMetrics& m);

}  // namespace felbm
