#include "felbm/dynamics.hpp"

#include <atomic>
#include <cmath>

#include "felbm/errors.hpp"
#include "kernels.hpp"

namespace felbm {

RelaxationSetup make_relaxation(double tau, double tau_g, double gamma_phi) {
  if (!(tau > 0.5) || !(tau_g > 0.5)) throw ConfigError("relaxation times must be > 0.5");
  RelaxationSetup rx;
  rx.tau = tau;
  rx.tau_g = tau_g;
  rx.nu = kCs2 * (tau - 0.5);
  rx.m_phi = gamma_phi * (tau_g - 0.5);
  return rx;
}

void equilibrium_f(double rho, const double* u, const Stencil& s, double* out) {
  double u2 = 0.0;
  for (int a = 0; a < s.d; ++a) u2 += u[a] * u[a];
  for (int i = 0; i < s.q; ++i) {
    double cu = 0.0;
    for (int a = 0; a < s.d; ++a) cu += s.c[i][a] * u[a];
    out[i] = s.w[i] * rho *
             (1.0 + kInvCs2 * cu + (kHalfInvCs4 * cu * cu - kHalfInvCs2 * u2));
  }
}

void equilibrium_g(double phi, double mu_phi, const double* u, double gamma_phi,
                   const Stencil& s, double* out) {
  double u2 = 0.0;
  for (int a = 0; a < s.d; ++a) u2 += u[a] * u[a];
  const double lead = kInvCs2 * gamma_phi * mu_phi;
  double tail = 0.0;
  for (int i = 1; i < s.q; ++i) {
    double cu = 0.0;
    for (int a = 0; a < s.d; ++a) cu += s.c[i][a] * u[a];
    out[i] = s.w[i] * (lead + phi * (kInvCs2 * cu +
                       (kHalfInvCs4 * cu * cu - kHalfInvCs2 * u2)));
    tail += out[i];
  }
  out[0] = phi - tail;  // closes the zeroth moment
}

void guo_source(const double* u, const double* F, double tau, const Stencil& s,
                double* out) {
  const double pref = 1.0 - 0.5 / tau;
  double uF = 0.0;
  for (int a = 0; a < s.d; ++a) uF += u[a] * F[a];
  for (int i = 0; i < s.q; ++i) {
    double cF = 0.0, cu = 0.0;
    for (int a = 0; a < s.d; ++a) {
      cF += s.c[i][a] * F[a];
      cu += s.c[i][a] * u[a];
    }
    out[i] = pref * s.w[i] * (kInvCs2 * (cF - uF) + kInvCs4 * cu * cF);
  }
}

namespace {

inline long collide_one(SimulationState& st, long node, const Domain& dom,
                        const FreeEnergyParams& p, const RelaxationSetup& rx,
                        double neg_eps) {
  const Stencil& s = dom.stencil;
  const long n = st.n;
  double uloc[3] = {0.0, 0.0, 0.0};
  double Floc[3] = {0.0, 0.0, 0.0};
  for (int a = 0; a < s.d; ++a) {
    uloc[a] = st.u[static_cast<long>(a) * n + node];
    Floc[a] = st.force[static_cast<long>(a) * n + node];
  }
  double feq[kMaxQ], geq[kMaxQ], src[kMaxQ];
  equilibrium_f(st.rho[node], uloc, s, feq);
  equilibrium_g(st.phi[node], st.mu_phi[node], uloc, p.gamma_phi, s, geq);
  guo_source(uloc, Floc, rx.tau, s, src);
  double* f = st.f();
  double* g = st.g();
  const double inv_tau = 1.0 / rx.tau;
  const double inv_tau_g = 1.0 / rx.tau_g;
  long neg = 0;
  for (int i = 0; i < s.q; ++i) {
    const long k = static_cast<long>(i) * n + node;
    const double fs = f[k] - (f[k] - feq[i]) * inv_tau + src[i];
    f[k] = fs;
    g[k] -= (g[k] - geq[i]) * inv_tau_g;
    if (fs < -neg_eps) ++neg;
  }
  return neg;
}

}  // namespace

void collide_node(SimulationState& st, long node, const Domain& dom,
                  const FreeEnergyParams& p, const RelaxationSetup& rx) {
  collide_one(st, node, dom, p, rx, 1e-12);
}

long collide(SimulationState& st, const Domain& dom, const FreeEnergyParams& p,
             const RelaxationSetup& rx, double neg_eps) {
  const long n = st.n;
  const NodeKind* mask = dom.grid.mask.data();
  std::atomic<long> negatives{0};

#pragma omp parallel for schedule(static)
  for (long node = 0; node < n; ++node) {
    if (mask[node] != NodeKind::bulk) continue;
    const long neg = collide_one(st, node, dom, p, rx, neg_eps);
    if (neg) negatives.fetch_add(neg, std::memory_order_relaxed);
  }
  return negatives.load();
}

void stream(SimulationState& st, const Domain& dom) {
  const Stencil& s = dom.stencil;
  const long n = st.n;
  const int q = s.q;
  const NodeKind* mask = dom.grid.mask.data();
  const double* f = st.f();
  const double* g = st.g();
  double* fb = st.f_back();
  double* gb = st.g_back();

  // push: every (bulk node, direction) slot of the back buffer that matters
  // is written exactly once, so the scatter is race-free
#pragma omp parallel for schedule(static)
  for (long node = 0; node < n; ++node) {
    if (mask[node] != NodeKind::bulk) continue;
    for (int i = 0; i < q; ++i) {
      const long dst = dom.nbr[node * q + i];
      fb[static_cast<long>(i) * n + dst] = f[static_cast<long>(i) * n + node];
      gb[static_cast<long>(i) * n + dst] = g[static_cast<long>(i) * n + node];
    }
  }

  kern::apply_links(st, dom);
  st.swap_buffers();
}

long collide_stream(SimulationState& st, const Domain& dom,
                    const FreeEnergyParams& p, const RelaxationSetup& rx,
                    double neg_eps) {
  if (st.q == 9) return kern::collide_stream<2, 9>(st, dom, p, rx, neg_eps);
  return kern::collide_stream<3, 19>(st, dom, p, rx, neg_eps);
}

long force_collide_stream(SimulationState& st, const Domain& dom,
                          const FreeEnergyParams& p, const RelaxationSetup& rx,
                          double neg_eps) {
  if (st.q == 9)
    return kern::force_collide_stream<2, 9>(st, dom, p, rx, neg_eps);
  return kern::force_collide_stream<3, 19>(st, dom, p, rx, neg_eps);
}

void step(SimulationState& st, const Domain& dom, const FreeEnergyParams& p,
          const RelaxationSetup& rx) {
  compute_moments(st, dom);
  chemical_potentials(st, dom, p);
  force_collide_stream(st, dom, p, rx);
  ++st.step;
}

void initialize_populations(SimulationState& st, const Domain& dom,
                            const FreeEnergyParams& p,
                            const RelaxationSetup& rx, long pre_run) {
  const Stencil& s = dom.stencil;
  const long n = st.n;
  double* f = st.f();
  double* g = st.g();
  for (long node = 0; node < n; ++node) {
    double uloc[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < s.d; ++a) uloc[a] = st.u[static_cast<long>(a) * n + node];
    double feq[kMaxQ], geq[kMaxQ];
    equilibrium_f(st.rho[node], uloc, s, feq);
    equilibrium_g(st.phi[node], st.mu_phi[node], uloc, p.gamma_phi, s, geq);
    for (int i = 0; i < s.q; ++i) {
      f[static_cast<long>(i) * n + node] = feq[i];
      g[static_cast<long>(i) * n + node] = geq[i];
    }
  }
  // moment alignment: force-free collisions, no streaming
  std::fill(st.force.begin(), st.force.end(), 0.0);
  for (long k = 0; k < pre_run; ++k) {
    compute_moments(st, dom);
    chemical_potentials(st, dom, p);
    collide(st, dom, p, rx);
  }
}

}  // namespace felbm
