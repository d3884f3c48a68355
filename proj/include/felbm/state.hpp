#pragma once

#include <vector>

#include "felbm/grid.hpp"

namespace felbm {

/// Dual-population state plus derived macroscopic fields on one grid.
/// Populations are stored plane-major (direction i, then node) and
/// double-buffered for streaming. Vector fields store one plane per axis.
struct SimulationState {
  long n = 0;
  int q = 0;
  int d = 0;
  long step = 0;

  std::vector<double> f_a, f_b;  // mixture population, current/back
  std::vector<double> g_a, g_b;  // order-parameter population
  bool front_is_a = true;

  std::vector<double> rho, phi;
  std::vector<double> mu_rho, mu_phi;
  std::vector<double> u;      // d planes
  std::vector<double> force;  // d planes

  double* f() { return front_is_a ? f_a.data() : f_b.data(); }
  double* g() { return front_is_a ? g_a.data() : g_b.data(); }
  double* f_back() { return front_is_a ? f_b.data() : f_a.data(); }
  double* g_back() { return front_is_a ? g_b.data() : g_a.data(); }
  const double* f() const { return front_is_a ? f_a.data() : f_b.data(); }
  const double* g() const { return front_is_a ? g_a.data() : g_b.data(); }
  void swap_buffers() { front_is_a = !front_is_a; }
};

/// Zeroed state sized for the grid/stencil pair. Throws on undersized grids.
SimulationState allocate_state(const Grid& grid, const Stencil& stencil);

/// rho = sum_i f_i, phi = sum_i g_i, u = (sum_i c_i f_i + F/2)/rho at every
/// bulk node, with F read from state.force. Aborts on rho <= 0 or NaN.
void compute_moments(SimulationState& st, const Domain& dom);

// Fixed-order (node-ascending) reductions over bulk nodes.
double sum_rho(const SimulationState& st, const Domain& dom);
double sum_phi(const SimulationState& st, const Domain& dom);
double max_speed(const SimulationState& st, const Domain& dom);

}  // namespace felbm
