#include "felbm/analysis.hpp"

#include <cmath>
#include <limits>

#include "felbm/errors.hpp"

namespace felbm {

std::vector<std::array<double, 3>> interface_points(
    const std::vector<double>& phi, const Grid& grid) {
  std::vector<std::array<double, 3>> pts;
  int x, y, z;
  for (long i = 0; i < grid.n(); ++i) {
    if (!grid.is_bulk(i)) continue;
    grid.coords(i, x, y, z);
    const double p0 = phi[i];
    for (int a = 0; a < grid.d; ++a) {
      int nb[3] = {x, y, z};
      ++nb[a];
      if (nb[a] == grid.dims[a]) {
        if (!grid.periodic[a]) continue;
        nb[a] = 0;
      }
      const long j = grid.index(nb[0], nb[1], nb[2]);
      if (!grid.is_bulk(j)) continue;
      const double p1 = phi[j];
      if ((p0 > 0.0) == (p1 > 0.0)) continue;
      const double t = p0 / (p0 - p1);  // linear root on the edge
      std::array<double, 3> pt{static_cast<double>(x), static_cast<double>(y),
                               static_cast<double>(z)};
      pt[a] += t;
      pts.push_back(pt);
    }
  }
  return pts;
}

std::array<double, 3> centroid_of(const std::vector<std::array<double, 3>>& pts) {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  for (const auto& p : pts)
    for (int a = 0; a < 3; ++a) c[a] += p[a];
  for (int a = 0; a < 3; ++a) c[a] /= static_cast<double>(pts.size());
  return c;
}

AxisLengths measure_deformation(const std::vector<std::array<double, 3>>& pts,
                                const std::array<double, 3>& centroid,
                                MeasureMode mode) {
  if (pts.size() < 8)
    throw NumericalError("degenerate interface: fewer than 8 points");
  AxisLengths ax;
  if (mode == MeasureMode::axis_aligned) {
    double lo[3], hi[3];
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::numeric_limits<double>::max();
      hi[a] = std::numeric_limits<double>::lowest();
    }
    for (const auto& p : pts)
      for (int a = 0; a < 3; ++a) {
        lo[a] = std::min(lo[a], p[a]);
        hi[a] = std::max(hi[a], p[a]);
      }
    double L = 0.0, B = std::numeric_limits<double>::max();
    for (int a = 0; a < 3; ++a) {
      const double half = 0.5 * (hi[a] - lo[a]);
      if (half <= 0.0) continue;  // flat axis (2D)
      L = std::max(L, half);
      B = std::min(B, half);
    }
    ax.L = L;
    ax.B = B;
  } else {
    double dmin = std::numeric_limits<double>::max(), dmax = 0.0;
    for (const auto& p : pts) {
      double r2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double dd = p[a] - centroid[a];
        r2 += dd * dd;
      }
      dmin = std::min(dmin, r2);
      dmax = std::max(dmax, r2);
    }
    ax.L = std::sqrt(dmax);
    ax.B = std::sqrt(dmin);
  }
  if (!(ax.B > 0.0)) throw NumericalError("degenerate interface: B = 0");
  ax.D = (ax.L - ax.B) / (ax.L + ax.B);
  return ax;
}

std::optional<double> measure_inclination(
    const std::vector<std::array<double, 3>>& pts,
    const std::array<double, 3>& centroid) {
  const AxisLengths ax = measure_deformation(pts, centroid, MeasureMode::inclined);
  if (ax.D < 0.005) return std::nullopt;  // circle: inclination undefined
  double best2 = -1.0;
  std::array<double, 3> dir{0.0, 0.0, 0.0};
  for (const auto& p : pts) {
    double r2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double dd = p[a] - centroid[a];
      r2 += dd * dd;
    }
    if (r2 > best2) {
      best2 = r2;
      for (int a = 0; a < 3; ++a) dir[a] = p[a] - centroid[a];
    }
  }
  const double len = std::sqrt(best2);
  const double c = std::abs(dir[0]) / len;  // fold into [0, 90] vs the x axis
  return std::acos(std::min(1.0, c)) * 180.0 / M_PI;
}

std::vector<double> detect_fragments(const std::vector<double>& phi,
                                     const Grid& grid) {
  std::vector<double> masses;
  std::vector<char> seen(grid.n(), 0);
  std::vector<long> stack;
  int x, y, z;
  for (long seed = 0; seed < grid.n(); ++seed) {
    if (seen[seed] || !grid.is_bulk(seed) || !(phi[seed] > 0.0)) continue;
    double mass = 0.0;
    stack.push_back(seed);
    seen[seed] = 1;
    while (!stack.empty()) {
      const long i = stack.back();
      stack.pop_back();
      mass += 0.5 * (1.0 + phi[i]);
      grid.coords(i, x, y, z);
      for (int a = 0; a < grid.d; ++a)
        for (int s = -1; s <= 1; s += 2) {
          int nb[3] = {x, y, z};
          nb[a] += s;
          if (nb[a] < 0 || nb[a] >= grid.dims[a]) {
            if (!grid.periodic[a]) continue;
            nb[a] = (nb[a] + grid.dims[a]) % grid.dims[a];
          }
          const long j = grid.index(nb[0], nb[1], nb[2]);
          if (seen[j] || !grid.is_bulk(j) || !(phi[j] > 0.0)) continue;
          seen[j] = 1;
          stack.push_back(j);
        }
    }
    masses.push_back(mass);
  }
  return masses;
}

double mass_c1(const std::vector<double>& phi, const Grid& grid) {
  double m = 0.0;
  for (long i = 0; i < grid.n(); ++i)
    if (grid.is_bulk(i)) m += 0.5 * (1.0 + phi[i]);
  return m;
}

DropletMetrics collect_metrics(const SimulationState& st, const Domain& dom,
                               const FreeEnergyParams& fe, double rate,
                               MeasureMode mode) {
  DropletMetrics m;
  m.step = st.step;
  m.tbar = rate * static_cast<double>(st.step);
  m.total_rho = sum_rho(st, dom);
  m.total_phi = sum_phi(st, dom);
  m.mass_c1 = mass_c1(st.phi, dom.grid);
  m.free_energy = total_free_energy(st, dom, fe);
  m.fragments = static_cast<long>(detect_fragments(st.phi, dom.grid).size());

  const double nan = std::numeric_limits<double>::quiet_NaN();
  m.deformation = nan;
  m.theta_deg = nan;
  const auto pts = interface_points(st.phi, dom.grid);
  if (pts.size() >= 8) {
    const auto c = centroid_of(pts);
    const AxisLengths ax = measure_deformation(pts, c, mode);
    m.deformation = ax.D;
    m.axis_long = ax.L;
    m.axis_short = ax.B;
    const auto th = measure_inclination(pts, c);
    if (th) m.theta_deg = *th;
  }
  return m;
}

}  // namespace felbm
