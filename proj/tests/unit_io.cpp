#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "felbm/config.hpp"
#include "felbm/errors.hpp"
#include "felbm/runner.hpp"
#include "felbm/vtk.hpp"

using namespace felbm;

namespace {

const char* kShearCfg =
    "# minimal shear config\n"
    "case = shear2d\n"
    "a = 10\n"
    "domain_ratio = 6 4\n"
    "re = 0.1\n"
    "ca = 0.1\n"
    "pe = 0.43\n"
    "ch = 0.11\n"
    "steps = 10\n"
    "sample_every = 5\n"
    "output_dir = /tmp/felbm_io_test\n";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("valid text with comments") {
    const CaseConfig cfg = parse_case_config_text(kShearCfg);
    CHECK(cfg.kind == CaseKind::shear2d);
    CHECK(cfg.a == 10.0);
    CHECK(cfg.domain_ratio[0] == 6.0);
    CHECK(cfg.domain_ratio[1] == 4.0);
    CHECK(cfg.groups.ch == 0.11);
    CHECK(cfg.steps == 10);
  }
  SUBCASE("unknown key") {
    CHECK_THROWS_AS(
        parse_case_config_text(std::string(kShearCfg) + "bogus = 1\n"),
        ConfigError);
  }
  SUBCASE("missing groups") {
    CHECK_THROWS_AS(parse_case_config_text("case = shear2d\nsteps = 1\n"),
                    ConfigError);
  }
  SUBCASE("malformed number") {
    CHECK_THROWS_AS(
        parse_case_config_text(std::string(kShearCfg) + "gamma = abc\n"),
        ConfigError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_case_config("/nonexistent/felbm.cfg"), ConfigError);
  }
}

TEST_CASE("formatting round-trips doubles exactly") {
  for (double v : {1.0 / 3.0, 5.1871e-05, -0.09375, 1e300, 0.1}) {
    CHECK(std::stod(fmt_double(v)) == v);
  }
}

TEST_CASE("manifest is a re-parseable config with identical resolution") {
  CaseConfig cfg = parse_case_config_text(kShearCfg);
  SimulationCase sc = init_shear_case(cfg);
  const std::string text = manifest_text(sc);
  const CaseConfig again = parse_case_config_text(text, "<manifest>");
  CHECK(again.rate == sc.cfg.rate);  // resolved rate pinned exactly
  CHECK(again.a == cfg.a);
  CHECK(again.steps == cfg.steps);
  CHECK(again.output_dir == cfg.output_dir);
  SimulationCase sc2 = init_shear_case(again);
  CHECK(sc2.params.fe.kappa1 == sc.params.fe.kappa1);
  CHECK(sc2.params.fe.gamma_phi == sc.params.fe.gamma_phi);
}

TEST_CASE("vtk dump round-trip") {
  const Stencil s = make_stencil(StencilKind::D2Q9);
  const Grid g = make_grid(2, {64, 64, 1}, {true, true, false});
  SimulationState st = allocate_state(g, s);
  for (long i = 0; i < st.n; ++i) {
    st.phi[i] = std::sin(0.1 * i);
    st.rho[i] = 1.0 + 1e-6 * (i % 13);
    st.u[i] = 1e-3 * (i % 7);
    st.u[st.n + i] = -1e-3 * (i % 5);
  }
  const std::string path = "/tmp/felbm_io_test_dump.vtk";
  write_vtk(st, g, path, 42, 0.125);

  const std::string raw = read_file(path);
  CHECK(raw.find("DIMENSIONS 64 64 1") != std::string::npos);
  CHECK(raw.find("DATASET STRUCTURED_POINTS") != std::string::npos);

  const VtkFields vf = read_vtk(path);
  CHECK(vf.dims[0] == 64);
  CHECK(vf.step == 42);
  CHECK(vf.tbar == 0.125);
  REQUIRE(vf.scalars.count("phi") == 1);
  REQUIRE(vf.scalars.count("rho") == 1);
  REQUIRE(vf.vectors.count("u") == 1);
  for (long i = 0; i < st.n; ++i) {
    CHECK(vf.scalars.at("phi")[i] == st.phi[i]);  // %.17g is lossless
    CHECK(vf.vectors.at("u")[i] == st.u[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("quiescent run with a single sample writes header plus one row") {
  CaseConfig cfg = parse_case_config_text(kShearCfg);
  cfg.steps = 0;
  cfg.droplet = true;
  cfg.output_dir = "/tmp/felbm_io_test_run";
  cfg.dump_every = 0;
  std::filesystem::remove_all(cfg.output_dir);
  SimulationCase sc = init_shear_case(cfg);
  run_simulation(sc);
  const std::string csv = read_file(cfg.output_dir + "/metrics.csv");
  CHECK(csv.rfind(metrics_csv_header() + "\n", 0) == 0);
  long lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 2);
  CHECK(csv.back() == '\n');
  std::filesystem::remove_all(cfg.output_dir);
}

TEST_CASE("rerunning the manifest reproduces the CSV bitwise") {
  CaseConfig cfg = parse_case_config_text(kShearCfg);
  cfg.steps = 40;
  cfg.sample_every = 10;
  cfg.dump_every = 0;
  cfg.output_dir = "/tmp/felbm_io_test_rerun_a";
  std::filesystem::remove_all(cfg.output_dir);
  SimulationCase sc = init_shear_case(cfg);
  run_simulation(sc);

  CaseConfig cfg2 =
      parse_case_config_text(manifest_text(sc), "<manifest>");
  cfg2.output_dir = "/tmp/felbm_io_test_rerun_b";
  std::filesystem::remove_all(cfg2.output_dir);
  SimulationCase sc2 = init_shear_case(cfg2);
  run_simulation(sc2);

  CHECK(read_file(cfg.output_dir + "/metrics.csv") ==
        read_file(cfg2.output_dir + "/metrics.csv"));
  std::filesystem::remove_all(cfg.output_dir);
  std::filesystem::remove_all(cfg2.output_dir);
}
