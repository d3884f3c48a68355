#pragma once

#include "felbm/thermo.hpp"

namespace felbm {

/// Relaxation times and the transport coefficients they realize:
///   nu    = cs2 (tau - 0.5)
///   m_phi = gamma_phi (tau_g - 0.5)
struct RelaxationSetup {
  double tau = 1.0;
  double tau_g = 1.0;
  double nu = 0.0;
  double m_phi = 0.0;
};

RelaxationSetup make_relaxation(double tau, double tau_g, double gamma_phi);

/// Second-order equilibrium of the mixture population.
void equilibrium_f(double rho, const double* u, const Stencil& s, double* out);

/// Order-parameter equilibrium; the rest direction closes the zeroth moment
/// so that sum_i g_i_eq == phi.
void equilibrium_g(double phi, double mu_phi, const double* u, double gamma_phi,
                   const Stencil& s, double* out);

/// Guo source term S_i for body force F at velocity u.
void guo_source(const double* u, const double* F, double tau, const Stencil& s,
                double* out);

/// BGK collision with Guo forcing at one node (in place, spec order:
/// equilibria from current moments/potentials/force, then relax).
void collide_node(SimulationState& st, long node, const Domain& dom,
                  const FreeEnergyParams& p, const RelaxationSetup& rx);

/// Collision over all bulk nodes; counts post-collision populations below
/// -eps as instability warnings (returned, not fatal).
long collide(SimulationState& st, const Domain& dom, const FreeEnergyParams& p,
             const RelaxationSetup& rx, double neg_eps = 1e-12);

/// Streaming as a buffer shift plus halfway bounce-back on the precomputed
/// boundary links; moving walls add the momentum correction using the
/// adjacent fluid node's current density and the solid node's stored
/// wall velocity. g always reflects plainly (no-flux).
void stream(SimulationState& st, const Domain& dom);

/// Fused collide + stream sweep (one pass over the populations).
/// Returns the negative-population count.
long collide_stream(SimulationState& st, const Domain& dom,
                    const FreeEnergyParams& p, const RelaxationSetup& rx,
                    double neg_eps = 1e-12);

/// Fully fused third barrier of a step: force + velocity + collide +
/// stream in one sweep; the step/run loops use this path.
long force_collide_stream(SimulationState& st, const Domain& dom,
                          const FreeEnergyParams& p, const RelaxationSetup& rx,
                          double neg_eps = 1e-12);

/// One full time step: moments, potentials, force+velocity, collide, stream.
void step(SimulationState& st, const Domain& dom, const FreeEnergyParams& p,
          const RelaxationSetup& rx);

/// Populations set to the equilibria of the current macroscopic fields,
/// followed by `pre_run` force-free collisions without streaming.
void initialize_populations(SimulationState& st, const Domain& dom,
                            const FreeEnergyParams& p,
                            const RelaxationSetup& rx, long pre_run = 0);

}  // namespace felbm
