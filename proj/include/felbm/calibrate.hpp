#pragma once

#include "felbm/runner.hpp"

namespace felbm {

/// Synthetic setups shared by the calibration commands and the test suites.
/// The returned cases run through run_simulation like the digital twins.

/// Fully periodic strip with two planar interfaces normal to x.
SimulationCase make_planar_strip_case(const LatticeParams& lp, int nx, int ny,
                                      long steps, long sample_every,
                                      const std::string& output_dir);

/// Fully periodic box (optionally with a centered droplet of radius a).
SimulationCase make_periodic_box_case(const LatticeParams& lp,
                                      std::array<int, 3> dims, int d,
                                      double droplet_radius, long steps,
                                      long sample_every,
                                      const std::string& output_dir);

/// Closed no-slip box with a centered droplet.
SimulationCase make_closed_box_case(const LatticeParams& lp,
                                    std::array<int, 3> dims, int d,
                                    double droplet_radius, long steps,
                                    long sample_every,
                                    const std::string& output_dir);

struct TanhFit {
  double xi = 0.0;   // fitted interface width
  double rms = 0.0;  // residual over the fit windows
  int interfaces = 0;
};

/// Least-squares tanh(x/(sqrt(2) xi)) fit of the y-averaged profile,
/// one fit per sign change, averaged.
TanhFit fit_planar_profile(const SimulationState& st, const Domain& dom);

/// Laplace pressure jump of a centered droplet: bulk thermodynamic
/// pressure averaged over the center nodes minus the domain corners.
double laplace_pressure_jump(const SimulationState& st, const Domain& dom,
                             const FreeEnergyParams& fe);

/// Largest |F| over bulk nodes (fixed-order scan).
double max_force(const SimulationState& st, const Domain& dom);

struct StagnationRates {
  double dudx = 0.0;
  double dvdy = 0.0;
};

/// Central differences of u at the center node (four-roller grids are
/// built with an odd node count so the stagnation point is a node).
StagnationRates stagnation_rates(const SimulationState& st, const Domain& dom);

struct SigmaXiCalibration {
  double sigma = 0.0;      // from the 2D Laplace law
  double xi = 0.0;         // from the tanh fit
  double fit_rms = 0.0;
  double delta_p = 0.0;
  double max_spurious = 0.0;
};

/// Runs the planar relaxation and the static-droplet Laplace test for the
/// given parameters. Throws NumericalError if the relaxation does not
/// settle within the step budget.
SigmaXiCalibration calibrate_sigma_xi(const LatticeParams& lp,
                                      double droplet_radius = 20.0,
                                      long planar_steps = 20000,
                                      long droplet_steps = 50000,
                                      const std::string& output_dir = "");

struct ExtensionCalibration {
  double eps = 0.0;            // extension rate at the stagnation point
  double dudx = 0.0, dvdy = 0.0;
  double eps_per_omega = 0.0;
  long steps_run = 0;
};

/// Single-phase four-roller run until the stagnation rate settles
/// (relative change below tol between samples); throws on the step budget.
ExtensionCalibration calibrate_extension_rate(const CaseConfig& cfg,
                                              long max_steps = 200000,
                                              double tol = 1e-4);

}  // namespace felbm
