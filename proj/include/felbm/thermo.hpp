#pragma once

#include <array>

#include "felbm/state.hpp"

namespace felbm {

/// Interface/relaxation parameters of the binary free-energy model.
struct FreeEnergyParams {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double alpha = 0.0;      // interface scale; planar width xi = sqrt(2)*alpha
  double gamma_phi = 0.0;  // mobility coefficient in g_eq
  double tau = 1.0;        // NSE relaxation time
  double tau_g = 1.0;      // CHE relaxation time

  void validate() const;  // throws ConfigError on parameter violations
};

/// Isotropic lattice-weighted central difference at one bulk node:
///   d_a s ~= (1/cs2) sum_i w_i c_ia s(x + c_i).
/// Non-bulk neighbors mirror the center value (zero normal gradient).
std::array<double, 3> fd_gradient(const std::vector<double>& field, long node,
                                  const Domain& dom);

/// Isotropic lattice Laplacian: (2/cs2) sum_i w_i [s(x + c_i) - s(x)].
double fd_laplacian(const std::vector<double>& field, long node,
                    const Domain& dom);

/// mu_rho, mu_phi from the free-energy functional at every bulk node.
void chemical_potentials(SimulationState& st, const Domain& dom,
                         const FreeEnergyParams& p);

/// F = -rho grad(mu_rho) - phi grad(mu_phi) at every bulk node; also
/// refreshes u = (sum_i c_i f_i + F/2)/rho so the velocity entering the
/// collision sees the current force.
void body_force(SimulationState& st, const Domain& dom);

/// Discrete free-energy functional over bulk nodes (diagnostic).
double total_free_energy(const SimulationState& st, const Domain& dom,
                         const FreeEnergyParams& p);

/// Equilibrium planar interface profile tanh(x/(sqrt(2) xi)).
double planar_profile(double x, double xi);

/// Bulk (gradient-free) thermodynamic pressure cs2*rho + rho*mu_rho^b +
/// phi*mu_phi^b - psi_b; exact where the fields are uniform, used for the
/// Laplace-law measurement.
double bulk_pressure(double rho, double phi, const FreeEnergyParams& p);

}  // namespace felbm
