#include "felbm/vtk.hpp"

#include <fstream>
#include <sstream>

#include "felbm/config.hpp"
#include "felbm/errors.hpp"

namespace felbm {

void write_vtk(const SimulationState& st, const Grid& grid,
               const std::string& path, long step, double tbar) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write field dump: " + path);
  const long n = grid.n();
  out << "# vtk DataFile Version 3.0\n";
  out << "felbm fields step=" << step << " tbar=" << fmt_double(tbar) << "\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << grid.dims[0] << " " << grid.dims[1] << " "
      << grid.dims[2] << "\n";
  out << "ORIGIN 0 0 0\n";
  out << "SPACING 1 1 1\n";
  out << "POINT_DATA " << n << "\n";

  const auto scalar = [&](const char* name, const std::vector<double>& v) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (long i = 0; i < n; ++i) out << fmt_double(v[i]) << "\n";
  };
  scalar("phi", st.phi);
  scalar("rho", st.rho);
  out << "VECTORS u double\n";
  for (long i = 0; i < n; ++i) {
    out << fmt_double(st.u[i]) << " " << fmt_double(st.u[n + i]) << " "
        << fmt_double(st.d == 3 ? st.u[2 * n + i] : 0.0) << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

VtkFields read_vtk(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open field dump: " + path);
  VtkFields vf;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# vtk DataFile", 0) != 0)
    throw IoError(path + ": not a legacy VTK file");
  std::getline(in, line);  // title: felbm fields step=N tbar=X
  {
    std::istringstream ts(line);
    std::string tok;
    while (ts >> tok) {
      if (tok.rfind("step=", 0) == 0) vf.step = std::stol(tok.substr(5));
      if (tok.rfind("tbar=", 0) == 0) vf.tbar = std::stod(tok.substr(5));
    }
  }
  long n = 0;
  std::string word;
  while (in >> word) {
    if (word == "DIMENSIONS") {
      in >> vf.dims[0] >> vf.dims[1] >> vf.dims[2];
      n = static_cast<long>(vf.dims[0]) * vf.dims[1] * vf.dims[2];
    } else if (word == "SCALARS") {
      std::string name, type;
      in >> name >> type;
      std::getline(in, line);  // rest of SCALARS line (component count)
      in >> word;              // LOOKUP_TABLE
      in >> word;              // default
      if (n <= 0) throw IoError(path + ": SCALARS before DIMENSIONS");
      auto& v = vf.scalars[name];
      v.resize(n);
      for (long i = 0; i < n; ++i)
        if (!(in >> v[i])) throw IoError(path + ": truncated scalar " + name);
    } else if (word == "VECTORS") {
      std::string name, type;
      in >> name >> type;
      if (n <= 0) throw IoError(path + ": VECTORS before DIMENSIONS");
      auto& v = vf.vectors[name];
      v.resize(3 * n);
      for (long i = 0; i < n; ++i)
        for (int a = 0; a < 3; ++a)
          if (!(in >> v[static_cast<long>(a) * n + i]))
            throw IoError(path + ": truncated vector " + name);
    }
  }
  if (n <= 0) throw IoError(path + ": missing DIMENSIONS");
  return vf;
}

}  // namespace felbm
