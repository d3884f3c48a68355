#include "felbm/grid.hpp"

#include "felbm/errors.hpp"

namespace felbm {

Grid make_grid(int d, std::array<int, 3> dims, std::array<bool, 3> periodic) {
  if (d != 2 && d != 3) throw ConfigError("grid dimension must be 2 or 3");
  Grid g;
  g.d = d;
  g.dims = dims;
  if (d == 2) {
    g.dims[2] = 1;
    periodic[2] = false;
  }
  g.periodic = periodic;
  for (int a = 0; a < d; ++a)
    if (g.dims[a] < 4) throw ConfigError("domain too small: need >= 4 nodes per axis");
  g.mask.assign(g.n(), NodeKind::bulk);
  return g;
}

bool grid_mask_valid(const Grid& g) {
  for (int a = 0; a < g.d; ++a) {
    if (g.periodic[a]) continue;
    int x, y, z;
    for (long i = 0; i < g.n(); ++i) {
      g.coords(i, x, y, z);
      const int v = (a == 0 ? x : (a == 1 ? y : z));
      if ((v == 0 || v == g.dims[a] - 1) && g.is_bulk(i)) return false;
    }
  }
  return true;
}

Domain make_domain(const Stencil& s, const Grid& g) {
  Domain dom;
  dom.stencil = s;
  dom.grid = g;
  const long n = g.n();
  const int q = s.q;
  dom.nbr.resize(n * q);
  int x, y, z;
  for (long node = 0; node < n; ++node) {
    g.coords(node, x, y, z);
    for (int i = 0; i < q; ++i) {
      int nx = x + s.c[i][0];
      int ny = y + s.c[i][1];
      int nz = z + s.c[i][2];
      // unconditional wrap; on non-periodic axes the mask contract keeps
      // bulk-node reads away from wrapped positions
      if (nx < 0) nx += g.dims[0]; else if (nx >= g.dims[0]) nx -= g.dims[0];
      if (ny < 0) ny += g.dims[1]; else if (ny >= g.dims[1]) ny -= g.dims[1];
      if (nz < 0) nz += g.dims[2]; else if (nz >= g.dims[2]) nz -= g.dims[2];
      dom.nbr[node * q + i] = static_cast<std::int32_t>(g.index(nx, ny, nz));
    }
  }
  for (long node = 0; node < n; ++node) {
    if (!g.is_bulk(node)) continue;
    for (int i = 1; i < q; ++i) {
      const std::int32_t src = dom.nbr[node * q + s.opp[i]];
      if (!g.is_bulk(src))
        dom.links.push_back({static_cast<std::int32_t>(node), src,
                             static_cast<std::int16_t>(i)});
    }
  }
  for (int i = 0; i < q; ++i)
    dom.delta[i] = s.c[i][0] +
                   static_cast<long>(g.dims[0]) *
                       (s.c[i][1] + static_cast<long>(g.dims[1]) * s.c[i][2]);
  dom.simple.assign(n, 0);
  for (long node = 0; node < n; ++node) {
    if (!g.is_bulk(node)) continue;
    bool ok = true;
    for (int i = 1; i < q && ok; ++i) {
      const long nb = dom.nbr[node * q + i];
      ok = nb == node + dom.delta[i] && g.is_bulk(nb);
    }
    dom.simple[node] = ok ? 1 : 0;
  }
  return dom;
}

}  // namespace felbm
