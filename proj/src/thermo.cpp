#include "felbm/thermo.hpp"

#include <cmath>

#include "felbm/errors.hpp"
#include "kernels.hpp"

namespace felbm {

void FreeEnergyParams::validate() const {
  if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw ConfigError("kappa must be > 0");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
  if (!(gamma_phi > 0.0)) throw ConfigError("gamma_phi must be > 0");
  if (!(tau > 0.5)) throw ConfigError("tau must be > 0.5");
  if (!(tau_g > 0.5)) throw ConfigError("tau_g must be > 0.5");
}

std::array<double, 3> fd_gradient(const std::vector<double>& field, long node,
                                  const Domain& dom) {
  const Stencil& s = dom.stencil;
  const NodeKind* mask = dom.grid.mask.data();
  const double center = field[node];
  std::array<double, 3> grad{0.0, 0.0, 0.0};
  for (int i = 1; i < s.q; ++i) {
    const long nb = dom.nbr[node * s.q + i];
    const double v = (mask[nb] == NodeKind::bulk) ? field[nb] : center;
    const double wv = s.w[i] * v;
    for (int a = 0; a < s.d; ++a) grad[a] += s.c[i][a] * wv;
  }
  for (int a = 0; a < s.d; ++a) grad[a] *= kInvCs2;
  return grad;
}

double fd_laplacian(const std::vector<double>& field, long node,
                    const Domain& dom) {
  const Stencil& s = dom.stencil;
  const NodeKind* mask = dom.grid.mask.data();
  const double center = field[node];
  double acc = 0.0;
  for (int i = 1; i < s.q; ++i) {
    const long nb = dom.nbr[node * s.q + i];
    const double v = (mask[nb] == NodeKind::bulk) ? field[nb] : center;
    acc += s.w[i] * (v - center);
  }
  return 2.0 * kInvCs2 * acc;
}

namespace {

// bulk (gradient-free) parts of the functional derivatives
inline void bulk_terms(double rho, double phi, const FreeEnergyParams& p,
                       double& t1, double& t2) {
  const double sp = rho + phi;
  const double sm = rho - phi;
  t1 = 0.125 * p.kappa1 * sp * (sp - 2.0) * (sp - 1.0);
  t2 = 0.125 * p.kappa2 * sm * (sm - 2.0) * (sm - 1.0);
}

}  // namespace

void chemical_potentials(SimulationState& st, const Domain& dom,
                         const FreeEnergyParams& p) {
  if (st.q == 9)
    kern::potentials<2, 9>(st, dom, p);
  else
    kern::potentials<3, 19>(st, dom, p);
}

void body_force(SimulationState& st, const Domain& dom) {
  if (st.q == 9)
    kern::force_velocity<2, 9>(st, dom);
  else
    kern::force_velocity<3, 19>(st, dom);
}

double total_free_energy(const SimulationState& st, const Domain& dom,
                         const FreeEnergyParams& p) {
  const double a2_8 = 0.125 * p.alpha * p.alpha;
  double psi = 0.0;
  for (long node = 0; node < st.n; ++node) {
    if (!dom.grid.is_bulk(node)) continue;
    const double r = st.rho[node];
    const double ph = st.phi[node];
    const double sp = r + ph;
    const double sm = r - ph;
    const auto gr = fd_gradient(st.rho, node, dom);
    const auto gp = fd_gradient(st.phi, node, dom);
    double plus2 = 0.0, minus2 = 0.0;
    for (int a = 0; a < st.d; ++a) {
      const double gpa = gr[a] + gp[a];
      const double gma = gr[a] - gp[a];
      plus2 += gpa * gpa;
      minus2 += gma * gma;
    }
    psi += p.kappa1 * (sp * sp * (sp - 2.0) * (sp - 2.0) / 32.0 + a2_8 * plus2);
    psi += p.kappa2 * (sm * sm * (sm - 2.0) * (sm - 2.0) / 32.0 + a2_8 * minus2);
  }
  return psi;
}

double planar_profile(double x, double xi) {
  return std::tanh(x / (std::sqrt(2.0) * xi));
}

double bulk_pressure(double rho, double phi, const FreeEnergyParams& p) {
  double t1, t2;
  bulk_terms(rho, phi, p, t1, t2);
  const double mu_rho_b = t1 + t2;
  const double mu_phi_b = t1 - t2;
  const double sp = rho + phi;
  const double sm = rho - phi;
  const double psi_b = p.kappa1 * sp * sp * (sp - 2.0) * (sp - 2.0) / 32.0 +
                       p.kappa2 * sm * sm * (sm - 2.0) * (sm - 2.0) / 32.0;
  return kCs2 * rho + rho * mu_rho_b + phi * mu_phi_b - psi_b;
}

}  // namespace felbm
