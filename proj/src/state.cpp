#include "felbm/state.hpp"

#include <climits>
#include <string>

#include "felbm/errors.hpp"
#include "kernels.hpp"

namespace felbm {

SimulationState allocate_state(const Grid& grid, const Stencil& stencil) {
  for (int a = 0; a < grid.d; ++a)
    if (grid.dims[a] < 4) throw ConfigError("domain too small: need >= 4 nodes per axis");
  if (grid.d != stencil.d) throw ConfigError("grid/stencil dimension mismatch");
  SimulationState st;
  st.n = grid.n();
  st.q = stencil.q;
  st.d = stencil.d;
  const long pn = st.n * st.q;
  st.f_a.assign(pn, 0.0);
  st.f_b.assign(pn, 0.0);
  st.g_a.assign(pn, 0.0);
  st.g_b.assign(pn, 0.0);
  st.rho.assign(st.n, 0.0);
  st.phi.assign(st.n, 0.0);
  st.mu_rho.assign(st.n, 0.0);
  st.mu_phi.assign(st.n, 0.0);
  st.u.assign(st.n * st.d, 0.0);
  st.force.assign(st.n * st.d, 0.0);
  return st;
}

namespace {

[[noreturn]] void report_bad_node(const Domain& dom, long node, long step,
                                  bool nonfinite) {
  int x, y, z;
  dom.grid.coords(node, x, y, z);
  const std::string where = "node (" + std::to_string(x) + "," +
                            std::to_string(y) + "," + std::to_string(z) +
                            ") at step " + std::to_string(step);
  if (nonfinite) throw NumericalError("NaN detected at " + where);
  throw NumericalError("positivity violation: rho <= 0 at " + where);
}

}  // namespace

void compute_moments(SimulationState& st, const Domain& dom) {
  kern::BadNode bad;
  if (st.q == 9)
    kern::moments<2, 9>(st, dom, bad);
  else
    kern::moments<3, 19>(st, dom, bad);
  if (bad.node.load() != LONG_MAX)
    report_bad_node(dom, bad.node.load(), st.step, bad.nonfinite.load());
}

double sum_rho(const SimulationState& st, const Domain& dom) {
  double s = 0.0;
  for (long node = 0; node < st.n; ++node)
    if (dom.grid.is_bulk(node)) s += st.rho[node];
  return s;
}

double sum_phi(const SimulationState& st, const Domain& dom) {
  double s = 0.0;
  for (long node = 0; node < st.n; ++node)
    if (dom.grid.is_bulk(node)) s += st.phi[node];
  return s;
}

double max_speed(const SimulationState& st, const Domain& dom) {
  double m = 0.0;
  for (long node = 0; node < st.n; ++node) {
    if (!dom.grid.is_bulk(node)) continue;
    double s2 = 0.0;
    for (int a = 0; a < st.d; ++a) {
      const double ua = st.u[static_cast<long>(a) * st.n + node];
      s2 += ua * ua;
    }
    if (s2 > m) m = s2;
  }
  return std::sqrt(m);
}

}  // namespace felbm
