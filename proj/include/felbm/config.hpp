#pragma once

#include <map>
#include <string>
#include <vector>

#include "felbm/cases.hpp"

namespace felbm {

/// Flat `key = value` text with `#` comments. Unknown keys are rejected.
CaseConfig parse_case_config(const std::string& path);
CaseConfig parse_case_config_text(const std::string& text,
                                  const std::string& origin = "<string>");

/// Re-runnable manifest: every effective key plus the derived lattice
/// parameters as comment lines.
std::string manifest_text(const SimulationCase& sc);
void write_manifest(const SimulationCase& sc, const std::string& path);

/// Shortest round-trip decimal formatting used for all text output.
std::string fmt_double(double v);

const char* case_kind_name(CaseKind k);
const char* roller_mode_name(RollerMode m);
const char* measure_mode_name(MeasureMode m);

}  // namespace felbm
