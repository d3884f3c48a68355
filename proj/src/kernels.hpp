// Hot data-parallel passes, templated on the stencil so the per-direction
// loops unroll. Blocks of four interior nodes (Domain::simple) take a SIMD
// path; everything else runs the adjacent scalar body, which is the
// reference. Lane arithmetic matches the scalar sequence exactly, so fields
// are bitwise independent of both the path taken and the thread partition.
#pragma once

#include <atomic>
#include <climits>
#include <cmath>

#include "felbm/dynamics.hpp"

namespace felbm::kern {

typedef double v4 __attribute__((vector_size(32)));
typedef long long v4i __attribute__((vector_size(32)));
typedef double v4_unaligned
    __attribute__((vector_size(32), aligned(8), may_alias));

inline v4 vload(const double* p) {
  return *reinterpret_cast<const v4_unaligned*>(p);
}
inline void vstore(double* p, v4 x) {
  *reinterpret_cast<v4_unaligned*>(p) = x;
}
inline v4 splat(double x) { return v4{x, x, x, x}; }

inline bool block_simple(const std::uint8_t* simple, long m) {
  return (simple[m] & simple[m + 1] & simple[m + 2] & simple[m + 3]) != 0;
}

template <int D, int Q>
struct Geometry {
  double w[Q];
  double c[Q][3];
  int opp[Q];
  explicit Geometry(const Stencil& s) {
    for (int i = 0; i < Q; ++i) {
      w[i] = s.w[i];
      for (int a = 0; a < 3; ++a) c[i][a] = s.c[i][a];
      opp[i] = s.opp[i];
    }
  }
};

struct BadNode {
  std::atomic<long> node{LONG_MAX};
  std::atomic<bool> nonfinite{false};
  void note(long n, bool nf) {
    if (nf) nonfinite.store(true, std::memory_order_relaxed);
    long cur = node.load(std::memory_order_relaxed);
    while (n < cur &&
           !node.compare_exchange_weak(cur, n, std::memory_order_relaxed)) {
    }
  }
};

// ------------------------------------------------------------------ moments

template <int D, int Q>
inline void moments_node(SimulationState& st, const Geometry<D, Q>& geo,
                         long node, BadNode& bad) {
  const long n = st.n;
  const double* f = st.f();
  const double* g = st.g();
  double r = 0.0, p = 0.0;
  double mom[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < Q; ++i) {
    const double fi = f[static_cast<long>(i) * n + node];
    r += fi;
    p += g[static_cast<long>(i) * n + node];
    for (int a = 0; a < D; ++a) mom[a] += geo.c[i][a] * fi;
  }
  st.rho[node] = r;
  st.phi[node] = p;
  if (!std::isfinite(r) || !std::isfinite(p)) {
    bad.note(node, true);
    return;
  }
  if (!(r > 0.0)) {
    bad.note(node, false);
    return;
  }
  for (int a = 0; a < D; ++a)
    st.u[static_cast<long>(a) * n + node] =
        (mom[a] + 0.5 * st.force[static_cast<long>(a) * n + node]) / r;
}

template <int D, int Q>
void moments(SimulationState& st, const Domain& dom, BadNode& bad) {
  const long n = st.n;
  const Geometry<D, Q> geo(dom.stencil);
  const NodeKind* mask = dom.grid.mask.data();
  const std::uint8_t* simple = dom.simple.data();
  const double* f = st.f();
  const double* g = st.g();
  const long nblk = n / 4;

#pragma omp parallel for schedule(static)
  for (long mb = 0; mb < nblk; ++mb) {
    const long m = 4 * mb;
    if (!block_simple(simple, m)) {
      for (long node = m; node < m + 4; ++node)
        if (mask[node] == NodeKind::bulk) moments_node(st, geo, node, bad);
      continue;
    }
    v4 r = splat(0.0), p = splat(0.0);
    v4 mom[3] = {splat(0.0), splat(0.0), splat(0.0)};
    for (int i = 0; i < Q; ++i) {
      const v4 fi = vload(f + static_cast<long>(i) * n + m);
      r += fi;
      p += vload(g + static_cast<long>(i) * n + m);
      for (int a = 0; a < D; ++a) mom[a] += splat(geo.c[i][a]) * fi;
    }
    vstore(st.rho.data() + m, r);
    vstore(st.phi.data() + m, p);
    for (int b = 0; b < 4; ++b) {
      const double rb = r[b], pb = p[b];
      if (rb - rb != 0.0 || pb - pb != 0.0)
        bad.note(m + b, true);
      else if (!(rb > 0.0))
        bad.note(m + b, false);
    }
    for (int a = 0; a < D; ++a) {
      const v4 F = vload(st.force.data() + static_cast<long>(a) * n + m);
      vstore(st.u.data() + static_cast<long>(a) * n + m,
             (mom[a] + splat(0.5) * F) / r);
    }
  }
  for (long node = 4 * nblk; node < n; ++node)
    if (mask[node] == NodeKind::bulk) moments_node(st, geo, node, bad);
}

// --------------------------------------------------------------- potentials

struct PotentialCoeffs {
  double a2_4, ksum, kdif, k1_8, k2_8;
  explicit PotentialCoeffs(const FreeEnergyParams& p)
      : a2_4(0.25 * p.alpha * p.alpha),
        ksum(p.kappa1 + p.kappa2),
        kdif(p.kappa2 - p.kappa1),
        k1_8(0.125 * p.kappa1),
        k2_8(0.125 * p.kappa2) {}
};

template <int D, int Q>
inline void potentials_node(SimulationState& st, const Domain& dom,
                            const Geometry<D, Q>& geo,
                            const PotentialCoeffs& k, long node) {
  const NodeKind* mask = dom.grid.mask.data();
  const std::int32_t* nbr = dom.nbr.data();
  const double* rho = st.rho.data();
  const double* phi = st.phi.data();
  const double r0 = rho[node];
  const double p0 = phi[node];
  double acc_r = 0.0, acc_p = 0.0;
  for (int i = 1; i < Q; ++i) {
    const std::int32_t nb = nbr[node * Q + i];
    const bool bulk = mask[nb] == NodeKind::bulk;
    acc_r += geo.w[i] * ((bulk ? rho[nb] : r0) - r0);
    acc_p += geo.w[i] * ((bulk ? phi[nb] : p0) - p0);
  }
  const double lap_rho = 2.0 * kInvCs2 * acc_r;
  const double lap_phi = 2.0 * kInvCs2 * acc_p;
  const double sp = r0 + p0;
  const double sm = r0 - p0;
  const double t1 = k.k1_8 * sp * (sp - 2.0) * (sp - 1.0);
  const double t2 = k.k2_8 * sm * (sm - 2.0) * (sm - 1.0);
  st.mu_rho[node] = t1 + t2 + k.a2_4 * (k.ksum * (-lap_rho) + k.kdif * lap_phi);
  st.mu_phi[node] = t1 - t2 + k.a2_4 * (k.ksum * (-lap_phi) + k.kdif * lap_rho);
}

template <int D, int Q>
void potentials(SimulationState& st, const Domain& dom,
                const FreeEnergyParams& p) {
  const long n = st.n;
  const Geometry<D, Q> geo(dom.stencil);
  const PotentialCoeffs k(p);
  const NodeKind* mask = dom.grid.mask.data();
  const std::uint8_t* simple = dom.simple.data();
  const double* rho = st.rho.data();
  const double* phi = st.phi.data();
  const long nblk = n / 4;

#pragma omp parallel for schedule(static)
  for (long mb = 0; mb < nblk; ++mb) {
    const long m = 4 * mb;
    if (!block_simple(simple, m)) {
      for (long node = m; node < m + 4; ++node)
        if (mask[node] == NodeKind::bulk)
          potentials_node(st, dom, geo, k, node);
      continue;
    }
    const v4 r0 = vload(rho + m);
    const v4 p0 = vload(phi + m);
    v4 acc_r = splat(0.0), acc_p = splat(0.0);
    for (int i = 1; i < Q; ++i) {
      acc_r += splat(geo.w[i]) * (vload(rho + m + dom.delta[i]) - r0);
      acc_p += splat(geo.w[i]) * (vload(phi + m + dom.delta[i]) - p0);
    }
    const v4 lap_rho = splat(2.0 * kInvCs2) * acc_r;
    const v4 lap_phi = splat(2.0 * kInvCs2) * acc_p;
    const v4 sp = r0 + p0;
    const v4 sm = r0 - p0;
    const v4 t1 = splat(k.k1_8) * sp * (sp - splat(2.0)) * (sp - splat(1.0));
    const v4 t2 = splat(k.k2_8) * sm * (sm - splat(2.0)) * (sm - splat(1.0));
    vstore(st.mu_rho.data() + m,
           t1 + t2 + splat(k.a2_4) * (splat(k.ksum) * (-lap_rho) +
                                      splat(k.kdif) * lap_phi));
    vstore(st.mu_phi.data() + m,
           t1 - t2 + splat(k.a2_4) * (splat(k.ksum) * (-lap_phi) +
                                      splat(k.kdif) * lap_rho));
  }
  for (long node = 4 * nblk; node < n; ++node)
    if (mask[node] == NodeKind::bulk) potentials_node(st, dom, geo, k, node);
}

// ----------------------------------------------------------- force+velocity

template <int D, int Q>
inline void force_velocity_node(SimulationState& st, const Domain& dom,
                                const Geometry<D, Q>& geo, long node,
                                double F_out[3], double u_out[3]) {
  const long n = st.n;
  const NodeKind* mask = dom.grid.mask.data();
  const std::int32_t* nbr = dom.nbr.data();
  const double* mu_rho = st.mu_rho.data();
  const double* mu_phi = st.mu_phi.data();
  const double* f = st.f();
  const double mr0 = mu_rho[node];
  const double mp0 = mu_phi[node];
  double gr[3] = {0.0, 0.0, 0.0}, gp[3] = {0.0, 0.0, 0.0};
  for (int i = 1; i < Q; ++i) {
    const std::int32_t nb = nbr[node * Q + i];
    const bool bulk = mask[nb] == NodeKind::bulk;
    const double wvr = geo.w[i] * (bulk ? mu_rho[nb] : mr0);
    const double wvp = geo.w[i] * (bulk ? mu_phi[nb] : mp0);
    for (int a = 0; a < D; ++a) {
      gr[a] += geo.c[i][a] * wvr;
      gp[a] += geo.c[i][a] * wvp;
    }
  }
  double mom[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < Q; ++i) {
    const double fi = f[static_cast<long>(i) * n + node];
    for (int a = 0; a < D; ++a) mom[a] += geo.c[i][a] * fi;
  }
  const double r = st.rho[node];
  const double ph = st.phi[node];
  for (int a = 0; a < D; ++a) {
    F_out[a] = -r * (gr[a] * kInvCs2) - ph * (gp[a] * kInvCs2);
    u_out[a] = (mom[a] + 0.5 * F_out[a]) / r;
    st.force[static_cast<long>(a) * n + node] = F_out[a];
    st.u[static_cast<long>(a) * n + node] = u_out[a];
  }
}

// SIMD force + velocity for one simple block; writes the planes and hands
// the values back for the fused path
template <int D, int Q>
inline void force_velocity_block(SimulationState& st, const Domain& dom,
                                 const Geometry<D, Q>& geo, long m, v4 F[3],
                                 v4 u[3]) {
  const long n = st.n;
  const double* mu_rho = st.mu_rho.data();
  const double* mu_phi = st.mu_phi.data();
  const double* f = st.f();
  v4 gr[3] = {splat(0.0), splat(0.0), splat(0.0)};
  v4 gp[3] = {splat(0.0), splat(0.0), splat(0.0)};
  for (int i = 1; i < Q; ++i) {
    const v4 wvr = splat(geo.w[i]) * vload(mu_rho + m + dom.delta[i]);
    const v4 wvp = splat(geo.w[i]) * vload(mu_phi + m + dom.delta[i]);
    for (int a = 0; a < D; ++a) {
      gr[a] += splat(geo.c[i][a]) * wvr;
      gp[a] += splat(geo.c[i][a]) * wvp;
    }
  }
  v4 mom[3] = {splat(0.0), splat(0.0), splat(0.0)};
  for (int i = 0; i < Q; ++i) {
    const v4 fi = vload(f + static_cast<long>(i) * n + m);
    for (int a = 0; a < D; ++a) mom[a] += splat(geo.c[i][a]) * fi;
  }
  const v4 r = vload(st.rho.data() + m);
  const v4 ph = vload(st.phi.data() + m);
  for (int a = 0; a < D; ++a) {
    F[a] = -r * (gr[a] * splat(kInvCs2)) - ph * (gp[a] * splat(kInvCs2));
    u[a] = (mom[a] + splat(0.5) * F[a]) / r;
    vstore(st.force.data() + static_cast<long>(a) * n + m, F[a]);
    vstore(st.u.data() + static_cast<long>(a) * n + m, u[a]);
  }
}

template <int D, int Q>
void force_velocity(SimulationState& st, const Domain& dom) {
  const long n = st.n;
  const Geometry<D, Q> geo(dom.stencil);
  const NodeKind* mask = dom.grid.mask.data();
  const std::uint8_t* simple = dom.simple.data();
  const long nblk = n / 4;

#pragma omp parallel for schedule(static)
  for (long mb = 0; mb < nblk; ++mb) {
    const long m = 4 * mb;
    if (block_simple(simple, m)) {
      v4 F[3], u[3];
      force_velocity_block(st, dom, geo, m, F, u);
    } else {
      double F[3], u[3];
      for (long node = m; node < m + 4; ++node)
        if (mask[node] == NodeKind::bulk)
          force_velocity_node(st, dom, geo, node, F, u);
    }
  }
  double F[3], u[3];
  for (long node = 4 * nblk; node < n; ++node)
    if (mask[node] == NodeKind::bulk)
      force_velocity_node(st, dom, geo, node, F, u);
}

// bounce-back fixup on the back buffers (shared by stream and the fused pass)
inline void apply_links(SimulationState& st, const Domain& dom) {
  const Stencil& s = dom.stencil;
  const long n = st.n;
  double* fb = st.f_back();
  double* gb = st.g_back();
  for (const BoundaryLink& lk : dom.links) {
    const int i = lk.dir;
    const int io = s.opp[i];
    double cw = 0.0;
    for (int a = 0; a < s.d; ++a)
      cw += s.c[io][a] * st.u[static_cast<long>(a) * n + lk.solid];
    const double corr = 2.0 * s.w[io] * st.rho[lk.node] * cw * kInvCs2;
    fb[static_cast<long>(i) * n + lk.node] =
        fb[static_cast<long>(io) * n + lk.solid] - corr;
    gb[static_cast<long>(i) * n + lk.node] =
        gb[static_cast<long>(io) * n + lk.solid];
  }
}

// ------------------------------------------------- collide (+ force) stream

struct CollideCoeffs {
  double inv_tau, inv_tau_g, pref, gamma_phi, neg_eps;
  CollideCoeffs(const FreeEnergyParams& p, const RelaxationSetup& rx,
                double eps)
      : inv_tau(1.0 / rx.tau),
        inv_tau_g(1.0 / rx.tau_g),
        pref(1.0 - 0.5 / rx.tau),
        gamma_phi(p.gamma_phi),
        neg_eps(eps) {}
};

// relaxation + push for one node given current u and F
template <int D, int Q>
inline long collide_push_node(SimulationState& st, const Domain& dom,
                              const Geometry<D, Q>& geo,
                              const CollideCoeffs& cc, long node,
                              const double u[3], const double F[3]) {
  const long n = st.n;
  const std::int32_t* nbr = dom.nbr.data();
  const double* f = st.f();
  const double* g = st.g();
  double* fb = st.f_back();
  double* gb = st.g_back();
  const double r = st.rho[node];
  const double ph = st.phi[node];
  double u2 = 0.0, uF = 0.0;
  for (int a = 0; a < D; ++a) {
    u2 += u[a] * u[a];
    uF += u[a] * F[a];
  }
  const double lead = kInvCs2 * cc.gamma_phi * st.mu_phi[node];

  double feq[Q], geq[Q], src[Q];
  double tail = 0.0;
  for (int i = 0; i < Q; ++i) {
    double cu = 0.0, cF = 0.0;
    for (int a = 0; a < D; ++a) {
      cu += geo.c[i][a] * u[a];
      cF += geo.c[i][a] * F[a];
    }
    const double quad = kHalfInvCs4 * cu * cu - kHalfInvCs2 * u2;
    feq[i] = geo.w[i] * r * (1.0 + kInvCs2 * cu + quad);
    src[i] = cc.pref * geo.w[i] * (kInvCs2 * (cF - uF) + kInvCs4 * cu * cF);
    if (i != 0) {
      geq[i] = geo.w[i] * (lead + ph * (kInvCs2 * cu + quad));
      tail += geq[i];
    }
  }
  geq[0] = ph - tail;

  long neg = 0;
  for (int i = 0; i < Q; ++i) {
    const long k = static_cast<long>(i) * n + node;
    const double fs = f[k] - (f[k] - feq[i]) * cc.inv_tau + src[i];
    const double gs = g[k] - (g[k] - geq[i]) * cc.inv_tau_g;
    if (fs < -cc.neg_eps) ++neg;
    const long dst = nbr[node * Q + i];
    fb[static_cast<long>(i) * n + dst] = fs;
    gb[static_cast<long>(i) * n + dst] = gs;
  }
  return neg;
}

// SIMD relaxation + push for a simple block
template <int D, int Q>
inline long collide_push_block(SimulationState& st, const Domain& dom,
                               const Geometry<D, Q>& geo,
                               const CollideCoeffs& cc, long m, const v4 u[3],
                               const v4 F[3]) {
  const long n = st.n;
  const double* f = st.f();
  const double* g = st.g();
  double* fb = st.f_back();
  double* gb = st.g_back();
  const v4 r = vload(st.rho.data() + m);
  const v4 ph = vload(st.phi.data() + m);
  v4 u2 = splat(0.0), uF = splat(0.0);
  for (int a = 0; a < D; ++a) {
    u2 += u[a] * u[a];
    uF += u[a] * F[a];
  }
  const v4 lead = splat(kInvCs2 * cc.gamma_phi) * vload(st.mu_phi.data() + m);

  v4 feq[Q], geq[Q], src[Q];
  v4 tail = splat(0.0);
  for (int i = 0; i < Q; ++i) {
    v4 cu = splat(0.0), cF = splat(0.0);
    for (int a = 0; a < D; ++a) {
      cu += splat(geo.c[i][a]) * u[a];
      cF += splat(geo.c[i][a]) * F[a];
    }
    const v4 quad = splat(kHalfInvCs4) * cu * cu - splat(kHalfInvCs2) * u2;
    feq[i] = splat(geo.w[i]) * r * (splat(1.0) + splat(kInvCs2) * cu + quad);
    src[i] = splat(cc.pref) * splat(geo.w[i]) *
             (splat(kInvCs2) * (cF - uF) + splat(kInvCs4) * cu * cF);
    if (i != 0) {
      geq[i] = splat(geo.w[i]) * (lead + ph * (splat(kInvCs2) * cu + quad));
      tail += geq[i];
    }
  }
  geq[0] = ph - tail;

  const v4 vneg = splat(-cc.neg_eps);
  v4i negcnt = {0, 0, 0, 0};
  for (int i = 0; i < Q; ++i) {
    const long k = static_cast<long>(i) * n + m;
    const v4 fv = vload(f + k);
    const v4 gv = vload(g + k);
    const v4 fs = fv - (fv - feq[i]) * splat(cc.inv_tau) + src[i];
    const v4 gs = gv - (gv - geq[i]) * splat(cc.inv_tau_g);
    negcnt -= (fs < vneg);  // mask lanes are 0 / -1
    const long dst = m + dom.delta[i];
    vstore(fb + static_cast<long>(i) * n + dst, fs);
    vstore(gb + static_cast<long>(i) * n + dst, gs);
  }
  return negcnt[0] + negcnt[1] + negcnt[2] + negcnt[3];
}

template <int D, int Q>
long collide_stream(SimulationState& st, const Domain& dom,
                    const FreeEnergyParams& p, const RelaxationSetup& rx,
                    double neg_eps) {
  const long n = st.n;
  const Geometry<D, Q> geo(dom.stencil);
  const CollideCoeffs cc(p, rx, neg_eps);
  const NodeKind* mask = dom.grid.mask.data();
  const std::uint8_t* simple = dom.simple.data();
  const long nblk = n / 4;
  std::atomic<long> negatives{0};

#pragma omp parallel for schedule(static)
  for (long mb = 0; mb < nblk; ++mb) {
    const long m = 4 * mb;
    long neg = 0;
    if (block_simple(simple, m)) {
      v4 u[3], F[3];
      for (int a = 0; a < D; ++a) {
        u[a] = vload(st.u.data() + static_cast<long>(a) * n + m);
        F[a] = vload(st.force.data() + static_cast<long>(a) * n + m);
      }
      neg = collide_push_block(st, dom, geo, cc, m, u, F);
    } else {
      for (long node = m; node < m + 4; ++node) {
        if (mask[node] != NodeKind::bulk) continue;
        double u[3] = {0, 0, 0}, F[3] = {0, 0, 0};
        for (int a = 0; a < D; ++a) {
          u[a] = st.u[static_cast<long>(a) * n + node];
          F[a] = st.force[static_cast<long>(a) * n + node];
        }
        neg += collide_push_node(st, dom, geo, cc, node, u, F);
      }
    }
    if (neg) negatives.fetch_add(neg, std::memory_order_relaxed);
  }
  for (long node = 4 * nblk; node < n; ++node) {
    if (mask[node] != NodeKind::bulk) continue;
    double u[3] = {0, 0, 0}, F[3] = {0, 0, 0};
    for (int a = 0; a < D; ++a) {
      u[a] = st.u[static_cast<long>(a) * n + node];
      F[a] = st.force[static_cast<long>(a) * n + node];
    }
    const long neg = collide_push_node(st, dom, geo, cc, node, u, F);
    if (neg) negatives.fetch_add(neg, std::memory_order_relaxed);
  }

  apply_links(st, dom);
  st.swap_buffers();
  return negatives.load();
}

template <int D, int Q>
long force_collide_stream(SimulationState& st, const Domain& dom,
                          const FreeEnergyParams& p, const RelaxationSetup& rx,
                          double neg_eps) {
  const long n = st.n;
  const Geometry<D, Q> geo(dom.stencil);
  const CollideCoeffs cc(p, rx, neg_eps);
  const NodeKind* mask = dom.grid.mask.data();
  const std::uint8_t* simple = dom.simple.data();
  const long nblk = n / 4;
  std::atomic<long> negatives{0};

#pragma omp parallel for schedule(static)
  for (long mb = 0; mb < nblk; ++mb) {
    const long m = 4 * mb;
    long neg = 0;
    if (block_simple(simple, m)) {
      v4 F[3], u[3];
      force_velocity_block(st, dom, geo, m, F, u);
      neg = collide_push_block(st, dom, geo, cc, m, u, F);
    } else {
      for (long node = m; node < m + 4; ++node) {
        if (mask[node] != NodeKind::bulk) continue;
        double F[3] = {0, 0, 0}, u[3] = {0, 0, 0};
        force_velocity_node(st, dom, geo, node, F, u);
        neg += collide_push_node(st, dom, geo, cc, node, u, F);
      }
    }
    if (neg) negatives.fetch_add(neg, std::memory_order_relaxed);
  }
  for (long node = 4 * nblk; node < n; ++node) {
    if (mask[node] != NodeKind::bulk) continue;
    double F[3] = {0, 0, 0}, u[3] = {0, 0, 0};
    force_velocity_node(st, dom, geo, node, F, u);
    const long neg = collide_push_node(st, dom, geo, cc, node, u, F);
    if (neg) negatives.fetch_add(neg, std::memory_order_relaxed);
  }

  apply_links(st, dom);
  st.swap_buffers();
  return negatives.load();
}

}  // namespace felbm::kern
