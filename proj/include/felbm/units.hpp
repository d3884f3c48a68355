#pragma once

#include "felbm/dynamics.hpp"

namespace felbm {

/// Target non-dimensional groups:
///   Re = rate a^2 / nu,  Ca = a rate mu_c / sigma,
///   Pe = rate a xi / (M_phi A),  Ch = xi / a.
/// `rate` is the shear rate gamma (shear cases) or extension rate eps
/// (four-roller); mu_c = rho nu with rho = 1 (unity ratios).
struct DimensionlessGroups {
  double re = 0.0;
  double ca = 0.0;
  double pe = 0.0;
  double ch = 0.0;

  void validate() const;
};

/// Lattice realization of a group target for symmetric parameters
/// (kappa1 = kappa2 = kappa, sigma = alpha kappa / 3, xi = sqrt(2) alpha).
struct LatticeParams {
  FreeEnergyParams fe;
  RelaxationSetup relax;
  double a = 0.0;      // droplet radius (nodes)
  double rate = 0.0;   // gamma or eps
  double sigma = 0.0;  // alpha kappa / 3
  double xi = 0.0;     // Ch a
  double pe_a = 0.0;   // mobility coefficient A in Pe (default kappa/4)
};

/// Solves nu, tau, alpha, kappa, Gamma_phi from the groups at a given rate.
/// pe_a <= 0 selects the default A = kappa/4. Throws ConfigError when tau
/// leaves the stability window (0.5, 2] or sigma is non-positive.
LatticeParams solve_lattice_params(const DimensionlessGroups& groups, double a,
                                   double rate, double tau_g = 1.0,
                                   double pe_a = 0.0);

/// Recovers (Re, Ca, Pe, Ch) from a lattice realization (round-trip check).
DimensionlessGroups recover_groups(const LatticeParams& lp);

}  // namespace felbm
