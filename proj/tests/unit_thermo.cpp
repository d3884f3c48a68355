#include <cmath>

#include "doctest.h"
#include "felbm/dynamics.hpp"
#include "felbm/errors.hpp"

using namespace felbm;

namespace {

struct Fixture {
  Stencil s = make_stencil(StencilKind::D2Q9);
  Grid g = make_grid(2, {16, 16, 1}, {true, true, false});
  Domain dom = make_domain(s, g);
  SimulationState st = allocate_state(g, s);

  void fill(double (*fn)(double, double)) {
    int x, y, z;
    for (long i = 0; i < g.n(); ++i) {
      g.coords(i, x, y, z);
      st.rho[i] = fn(x, y);
    }
  }
};

FreeEnergyParams symmetric_params(double kappa, double alpha) {
  FreeEnergyParams p;
  p.kappa1 = kappa;
  p.kappa2 = kappa;
  p.alpha = alpha;
  p.gamma_phi = 1.0;
  p.tau = 1.0;
  p.tau_g = 1.0;
  return p;
}

}  // namespace

TEST_CASE("gradient and laplacian are exact on low-order polynomials") {
  Fixture fx;
  // interior nodes only: periodic wrap breaks polynomial continuation
  const auto interior = [&](long i) {
    int x, y, z;
    fx.g.coords(i, x, y, z);
    return x >= 2 && x <= 13 && y >= 2 && y <= 13;
  };

  SUBCASE("constant field") {
    fx.fill([](double, double) { return 7.5; });
    for (long i = 0; i < fx.g.n(); ++i) {
      const auto gr = fd_gradient(fx.st.rho, i, fx.dom);
      CHECK(gr[0] == 0.0);  // pairwise cancellation is exact
      CHECK(gr[1] == 0.0);
      CHECK(fd_laplacian(fx.st.rho, i, fx.dom) == 0.0);
    }
  }

  SUBCASE("linear field s = x") {
    fx.fill([](double x, double) { return x; });
    for (long i = 0; i < fx.g.n(); ++i) {
      if (!interior(i)) continue;
      const auto gr = fd_gradient(fx.st.rho, i, fx.dom);
      CHECK(gr[0] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(gr[1] == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(fd_laplacian(fx.st.rho, i, fx.dom) ==
            doctest::Approx(0.0).epsilon(1e-14));
    }
  }

  SUBCASE("bilinear field s = x*y") {
    fx.fill([](double x, double y) { return x * y; });
    int x, y, z;
    for (long i = 0; i < fx.g.n(); ++i) {
      if (!interior(i)) continue;
      fx.g.coords(i, x, y, z);
      const auto gr = fd_gradient(fx.st.rho, i, fx.dom);
      CHECK(gr[0] == doctest::Approx(double(y)).epsilon(1e-13));
      CHECK(gr[1] == doctest::Approx(double(x)).epsilon(1e-13));
    }
  }

  SUBCASE("quadratic field s = x^2 and harmonic s = x + y") {
    fx.fill([](double x, double) { return x * x; });
    for (long i = 0; i < fx.g.n(); ++i)
      if (interior(i))
        CHECK(fd_laplacian(fx.st.rho, i, fx.dom) ==
              doctest::Approx(2.0).epsilon(1e-13));
    fx.fill([](double x, double y) { return x + y; });
    for (long i = 0; i < fx.g.n(); ++i)
      if (interior(i))
        CHECK(fd_laplacian(fx.st.rho, i, fx.dom) ==
              doctest::Approx(0.0).epsilon(1e-13));
  }
}

TEST_CASE("fd operators agree with plain central differences on smooth data") {
  Fixture fx;
  fx.fill([](double x, double y) {
    return 0.3 * x - 0.1 * y + 0.02 * x * y + 0.05 * x * x;
  });
  int x, y, z;
  for (long i = 0; i < fx.g.n(); ++i) {
    fx.g.coords(i, x, y, z);
    if (x < 2 || x > 13 || y < 2 || y > 13) continue;
    const auto v = [&](int dx, int dy) {
      return fx.st.rho[fx.g.index(x + dx, y + dy)];
    };
    const double gx = 0.5 * (v(1, 0) - v(-1, 0));
    const double gy = 0.5 * (v(0, 1) - v(0, -1));
    const auto gr = fd_gradient(fx.st.rho, i, fx.dom);
    CHECK(gr[0] == doctest::Approx(gx).epsilon(1e-12));  // both exact here
    CHECK(gr[1] == doctest::Approx(gy).epsilon(1e-12));
  }
}

TEST_CASE("chemical potentials: bulk minima and hand-computed values") {
  Fixture fx;
  const FreeEnergyParams p = symmetric_params(0.04, 0.8);

  SUBCASE("pure bulk is a double-well minimum") {
    std::fill(fx.st.rho.begin(), fx.st.rho.end(), 1.0);
    std::fill(fx.st.phi.begin(), fx.st.phi.end(), 1.0);
    chemical_potentials(fx.st, fx.dom, p);
    for (long i = 0; i < fx.g.n(); ++i) {
      CHECK(fx.st.mu_rho[i] == 0.0);
      CHECK(fx.st.mu_phi[i] == 0.0);
    }
  }

  SUBCASE("uniform phi = 0.5 reproduces the closed form") {
    std::fill(fx.st.rho.begin(), fx.st.rho.end(), 1.0);
    std::fill(fx.st.phi.begin(), fx.st.phi.end(), 0.5);
    chemical_potentials(fx.st, fx.dom, p);
    for (long i = 0; i < fx.g.n(); ++i) {
      CHECK(fx.st.mu_rho[i] == doctest::Approx(0.0).epsilon(1e-15));
      CHECK(fx.st.mu_phi[i] ==
            doctest::Approx(-0.09375 * p.kappa1).epsilon(1e-13));
    }
  }

  SUBCASE("mu_rho vanishes for symmetric kappa at rho = 1") {
    // tanh droplet: the bulk terms cancel analytically; numerically the
    // residual is pure roundoff
    int x, y, z;
    for (long i = 0; i < fx.g.n(); ++i) {
      fx.g.coords(i, x, y, z);
      const double r = std::hypot(x - 7.5, y - 7.5);
      fx.st.phi[i] = -std::tanh((r - 4.0) / (std::sqrt(2.0) * 1.1));
      fx.st.rho[i] = 1.0;
    }
    chemical_potentials(fx.st, fx.dom, p);
    for (long i = 0; i < fx.g.n(); ++i)
      CHECK(std::abs(fx.st.mu_rho[i]) <= 1e-16 * p.kappa1);
  }
}

TEST_CASE("planar tanh profile annihilates mu_phi to discretization error") {
  const Stencil s = make_stencil(StencilKind::D2Q9);
  const Grid g = make_grid(2, {64, 4, 1}, {true, true, false});
  const Domain dom = make_domain(s, g);
  SimulationState st = allocate_state(g, s);
  const double kappa = 0.05, alpha = 0.8;
  const FreeEnergyParams p = symmetric_params(kappa, alpha);
  const double xi = std::sqrt(2.0) * alpha;
  int x, y, z;
  for (long i = 0; i < g.n(); ++i) {
    g.coords(i, x, y, z);
    st.rho[i] = 1.0;
    st.phi[i] = -1.0 + std::tanh((x - 16.0) / (std::sqrt(2.0) * xi)) -
                std::tanh((x - 48.0) / (std::sqrt(2.0) * xi));
  }
  chemical_potentials(st, dom, p);
  // scale residual against the bulk coefficient kappa/4
  double worst = 0.0;
  for (long i = 0; i < g.n(); ++i)
    worst = std::max(worst, std::abs(st.mu_phi[i]));
  CHECK(worst < 0.08 * (kappa / 4.0));
}

TEST_CASE("body force vanishes on uniform and constant-potential states") {
  Fixture fx;
  std::fill(fx.st.rho.begin(), fx.st.rho.end(), 1.0);
  std::fill(fx.st.phi.begin(), fx.st.phi.end(), 0.25);
  const double u0[2] = {0.0, 0.0};
  double feq[kMaxQ];
  equilibrium_f(1.0, u0, fx.s, feq);
  for (long node = 0; node < fx.st.n; ++node)
    for (int i = 0; i < fx.s.q; ++i) fx.st.f()[i * fx.st.n + node] = feq[i];

  SUBCASE("uniform fields") {
    chemical_potentials(fx.st, fx.dom, symmetric_params(0.04, 0.8));
    body_force(fx.st, fx.dom);
    for (long i = 0; i < 2 * fx.st.n; ++i) CHECK(fx.st.force[i] == 0.0);
  }

  SUBCASE("spatially constant potentials, arbitrary fields") {
    for (long i = 0; i < fx.st.n; ++i) {
      fx.st.mu_rho[i] = 0.37;
      fx.st.mu_phi[i] = -1.2;
      fx.st.rho[i] = 1.0 + 0.01 * (i % 7);
      fx.st.phi[i] = 0.1 * (i % 3);
    }
    body_force(fx.st, fx.dom);
    for (long i = 0; i < 2 * fx.st.n; ++i) CHECK(fx.st.force[i] == 0.0);
  }
}

TEST_CASE("total free energy of uniform states") {
  Fixture fx;
  const double k1 = 0.04, k2 = 0.1;
  FreeEnergyParams p = symmetric_params(k1, 0.8);
  p.kappa2 = k2;
  std::fill(fx.st.rho.begin(), fx.st.rho.end(), 1.0);

  std::fill(fx.st.phi.begin(), fx.st.phi.end(), 1.0);
  CHECK(total_free_energy(fx.st, fx.dom, p) == 0.0);

  std::fill(fx.st.phi.begin(), fx.st.phi.end(), 0.0);
  const double v = static_cast<double>(fx.g.n());
  CHECK(total_free_energy(fx.st, fx.dom, p) ==
        doctest::Approx(v * (k1 + k2) / 32.0).epsilon(1e-12));
}

TEST_CASE("planar profile values") {
  CHECK(planar_profile(0.0, 1.2) == 0.0);
  CHECK(planar_profile(1e6, 1.2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(planar_profile(-1e6, 1.2) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(planar_profile(std::sqrt(2.0) * 1.2, 1.2) ==
        doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  FreeEnergyParams p = symmetric_params(0.04, 0.8);
  CHECK_NOTHROW(p.validate());
  p.tau = 0.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
