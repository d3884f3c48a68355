#include "felbm/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "felbm/errors.hpp"

namespace felbm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': " + v);
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long l = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return l;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for key '" + key + "': " + v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("invalid boolean for key '" + key + "': " + v);
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) out.push_back(to_double(key, tok));
  if (out.empty()) throw ConfigError("empty value for key '" + key + "'");
  return out;
}

}  // namespace

const char* case_kind_name(CaseKind k) {
  switch (k) {
    case CaseKind::shear2d: return "shear2d";
    case CaseKind::shear3d: return "shear3d";
    case CaseKind::fourroller2d: return "fourroller2d";
  }
  return "?";
}

const char* roller_mode_name(RollerMode m) {
  return m == RollerMode::roller ? "roller" : "analytic-extension";
}

const char* measure_mode_name(MeasureMode m) {
  return m == MeasureMode::inclined ? "inclined" : "axis";
}

CaseConfig parse_case_config_text(const std::string& text,
                                  const std::string& origin) {
  CaseConfig cfg;
  bool have_case = false, have_re = false, have_ca = false, have_pe = false,
       have_ch = false, have_steps = false;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": empty key or value");

    if (key == "case") {
      have_case = true;
      if (val == "shear2d") cfg.kind = CaseKind::shear2d;
      else if (val == "shear3d") cfg.kind = CaseKind::shear3d;
      else if (val == "fourroller2d") cfg.kind = CaseKind::fourroller2d;
      else throw ConfigError("unknown case '" + val + "'");
    } else if (key == "a") {
      cfg.a = to_double(key, val);
    } else if (key == "domain_ratio") {
      const auto r = to_doubles(key, val);
      if (r.size() > 3) throw ConfigError("domain_ratio takes at most 3 values");
      for (std::size_t i = 0; i < 3; ++i)
        cfg.domain_ratio[i] = r[std::min(i, r.size() - 1)];
    } else if (key == "re") {
      cfg.groups.re = to_double(key, val);
      have_re = true;
    } else if (key == "ca") {
      cfg.groups.ca = to_double(key, val);
      have_ca = true;
    } else if (key == "pe") {
      cfg.groups.pe = to_double(key, val);
      have_pe = true;
    } else if (key == "ch") {
      cfg.groups.ch = to_double(key, val);
      have_ch = true;
    } else if (key == "tau_g") {
      cfg.tau_g = to_double(key, val);
    } else if (key == "gamma" || key == "rate") {
      cfg.rate = to_double(key, val);
    } else if (key == "pe_a") {
      cfg.pe_a = to_double(key, val);
    } else if (key == "droplet") {
      cfg.droplet = to_bool(key, val);
    } else if (key == "mode") {
      if (val == "roller") cfg.mode = RollerMode::roller;
      else if (val == "analytic-extension") cfg.mode = RollerMode::analytic_extension;
      else throw ConfigError("unknown mode '" + val + "'");
    } else if (key == "omega") {
      cfg.omega = to_double(key, val);
    } else if (key == "eps_per_omega") {
      cfg.eps_per_omega = to_double(key, val);
    } else if (key == "steps") {
      cfg.steps = to_long(key, val);
      have_steps = true;
    } else if (key == "sample_every") {
      cfg.sample_every = to_long(key, val);
    } else if (key == "dump_every") {
      cfg.dump_every = to_long(key, val);
    } else if (key == "pre_run_steps") {
      cfg.pre_run_steps = to_long(key, val);
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(to_long(key, val));
    } else if (key == "u_cap") {
      cfg.u_cap = to_double(key, val);
    } else if (key == "measure") {
      cfg.measure_set = true;
      if (val == "inclined") cfg.measure = MeasureMode::inclined;
      else if (val == "axis") cfg.measure = MeasureMode::axis_aligned;
      else throw ConfigError("unknown measure mode '" + val + "'");
    } else {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
  }
  if (!have_case) throw ConfigError(origin + ": missing key 'case'");
  if (!have_re || !have_ca || !have_pe || !have_ch)
    throw ConfigError(origin + ": missing dimensionless group (re, ca, pe, ch)");
  if (!have_steps) throw ConfigError(origin + ": missing key 'steps'");
  if (cfg.steps < 0 || cfg.sample_every <= 0)
    throw ConfigError(origin + ": steps must be >= 0, sample_every > 0");
  return cfg;
}

CaseConfig parse_case_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_case_config_text(buf.str(), path);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string manifest_text(const SimulationCase& sc) {
  const CaseConfig& c = sc.cfg;
  std::ostringstream os;
  os << "# run manifest; re-running this file reproduces the outputs\n";
  os << "case = " << case_kind_name(c.kind) << "\n";
  os << "a = " << fmt_double(c.a) << "\n";
  os << "domain_ratio = " << fmt_double(c.domain_ratio[0]) << " "
     << fmt_double(c.domain_ratio[1]);
  if (c.kind == CaseKind::shear3d) os << " " << fmt_double(c.domain_ratio[2]);
  os << "\n";
  os << "re = " << fmt_double(c.groups.re) << "\n";
  os << "ca = " << fmt_double(c.groups.ca) << "\n";
  os << "pe = " << fmt_double(c.groups.pe) << "\n";
  os << "ch = " << fmt_double(c.groups.ch) << "\n";
  os << "tau_g = " << fmt_double(c.tau_g) << "\n";
  os << "gamma = " << fmt_double(c.rate) << "\n";
  os << "pe_a = " << fmt_double(sc.params.pe_a) << "\n";
  os << "droplet = " << (c.droplet ? "true" : "false") << "\n";
  if (c.kind == CaseKind::fourroller2d) {
    os << "mode = " << roller_mode_name(c.mode) << "\n";
    if (c.mode == RollerMode::roller) {
      os << "omega = " << fmt_double(c.omega) << "\n";
      os << "eps_per_omega = " << fmt_double(c.eps_per_omega) << "\n";
    }
  }
  os << "steps = " << c.steps << "\n";
  os << "sample_every = " << c.sample_every << "\n";
  os << "dump_every = " << c.dump_every << "\n";
  os << "pre_run_steps = " << c.pre_run_steps << "\n";
  os << "output_dir = " << c.output_dir << "\n";
  os << "u_cap = " << fmt_double(c.u_cap) << "\n";
  os << "measure = " << measure_mode_name(c.measure) << "\n";
  os << "# derived: dims =";
  for (int a = 0; a < sc.dom.grid.d; ++a) os << " " << sc.dom.grid.dims[a];
  os << "\n";
  os << "# derived: tau = " << fmt_double(sc.params.fe.tau) << "\n";
  os << "# derived: nu = " << fmt_double(sc.params.relax.nu) << "\n";
  os << "# derived: kappa = " << fmt_double(sc.params.fe.kappa1) << "\n";
  os << "# derived: alpha = " << fmt_double(sc.params.fe.alpha) << "\n";
  os << "# derived: xi = " << fmt_double(sc.params.xi) << "\n";
  os << "# derived: sigma = " << fmt_double(sc.params.sigma) << "\n";
  os << "# derived: gamma_phi = " << fmt_double(sc.params.fe.gamma_phi) << "\n";
  os << "# derived: m_phi = " << fmt_double(sc.params.relax.m_phi) << "\n";
  if (sc.wall_speed != 0.0)
    os << "# derived: wall_speed = " << fmt_double(sc.wall_speed) << "\n";
  return os.str();
}

void write_manifest(const SimulationCase& sc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path);
  out << manifest_text(sc);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace felbm
