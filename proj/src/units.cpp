#include "felbm/units.hpp"

#include <cmath>
#include <string>

#include "felbm/errors.hpp"

namespace felbm {

void DimensionlessGroups::validate() const {
  if (!(re > 0.0) || !(ca > 0.0) || !(pe > 0.0) || !(ch > 0.0))
    throw ConfigError("dimensionless groups must be strictly positive");
}

LatticeParams solve_lattice_params(const DimensionlessGroups& groups, double a,
                                   double rate, double tau_g, double pe_a) {
  groups.validate();
  if (!(a > 0.0)) throw ConfigError("droplet radius must be positive");
  if (!(rate > 0.0)) throw ConfigError("rate must be positive");
  if (!(tau_g > 0.5) || tau_g > 2.0)
    throw ConfigError("tau_g outside the stability window (0.5, 2]");

  LatticeParams lp;
  lp.a = a;
  lp.rate = rate;

  const double nu = rate * a * a / groups.re;
  const double tau = 0.5 + nu / kCs2;
  if (!(tau > 0.5) || tau > 2.0)
    throw ConfigError("tau = " + std::to_string(tau) +
                      " outside the stability window (0.5, 2]; lower the rate");

  lp.xi = groups.ch * a;
  const double alpha = lp.xi / std::sqrt(2.0);

  const double mu_c = nu;  // dynamic viscosity at rho = 1
  lp.sigma = a * rate * mu_c / groups.ca;
  if (!(lp.sigma > 0.0)) throw ConfigError("sigma must be positive");
  const double kappa = 3.0 * lp.sigma / alpha;

  lp.pe_a = pe_a > 0.0 ? pe_a : 0.25 * kappa;
  const double m_phi = rate * a * lp.xi / (groups.pe * lp.pe_a);
  const double gamma_phi = m_phi / (tau_g - 0.5);

  lp.fe.kappa1 = kappa;
  lp.fe.kappa2 = kappa;
  lp.fe.alpha = alpha;
  lp.fe.gamma_phi = gamma_phi;
  lp.fe.tau = tau;
  lp.fe.tau_g = tau_g;
  lp.fe.validate();
  lp.relax = make_relaxation(tau, tau_g, gamma_phi);

  // linearized order-parameter equilibrium scale Gamma_phi mu'(+-1)/cs2;
  // the scheme destabilizes as it approaches 1
  const double lambda = kInvCs2 * gamma_phi * 0.5 * kappa;
  if (lambda >= 1.0)
    throw ConfigError("mobility target unstable: Gamma_phi mu'/cs2 = " +
                      std::to_string(lambda) +
                      " >= 1; raise Pe*A or tau_g, or lower the rate");
  return lp;
}

DimensionlessGroups recover_groups(const LatticeParams& lp) {
  DimensionlessGroups g;
  g.re = lp.rate * lp.a * lp.a / lp.relax.nu;
  g.ca = lp.a * lp.rate * lp.relax.nu / lp.sigma;
  g.pe = lp.rate * lp.a * lp.xi / (lp.relax.m_phi * lp.pe_a);
  g.ch = lp.xi / lp.a;
  return g;
}

}  // namespace felbm
