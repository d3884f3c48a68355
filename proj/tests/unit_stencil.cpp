#include <cmath>

#include "doctest.h"
#include "felbm/stencil.hpp"

using namespace felbm;

namespace {
constexpr double kTol = 1e-15;

void check_moment_identities(const Stencil& s) {
  double w_sum = 0.0;
  for (int i = 0; i < s.q; ++i) {
    CHECK(s.w[i] > 0.0);
    w_sum += s.w[i];
  }
  CHECK(w_sum == doctest::Approx(1.0).epsilon(kTol));

  for (int a = 0; a < s.d; ++a) {
    double m1 = 0.0;
    for (int i = 0; i < s.q; ++i) m1 += s.w[i] * s.c[i][a];
    CHECK(std::abs(m1) <= kTol);
  }
  for (int a = 0; a < s.d; ++a)
    for (int b = 0; b < s.d; ++b) {
      double m2 = 0.0;
      for (int i = 0; i < s.q; ++i) m2 += s.w[i] * s.c[i][a] * s.c[i][b];
      CHECK(std::abs(m2 - (a == b ? s.cs2 : 0.0)) <= kTol);
    }
  // odd moments vanish
  for (int a = 0; a < s.d; ++a)
    for (int b = 0; b < s.d; ++b)
      for (int g = 0; g < s.d; ++g) {
        double m3 = 0.0;
        for (int i = 0; i < s.q; ++i)
          m3 += s.w[i] * s.c[i][a] * s.c[i][b] * s.c[i][g];
        CHECK(std::abs(m3) <= kTol);
      }
  // fourth order isotropy
  const double cs4 = s.cs2 * s.cs2;
  for (int a = 0; a < s.d; ++a)
    for (int b = 0; b < s.d; ++b)
      for (int g = 0; g < s.d; ++g)
        for (int e = 0; e < s.d; ++e) {
          double m4 = 0.0;
          for (int i = 0; i < s.q; ++i)
            m4 += s.w[i] * s.c[i][a] * s.c[i][b] * s.c[i][g] * s.c[i][e];
          const double want =
              cs4 * ((a == b && g == e ? 1.0 : 0.0) +
                     (a == g && b == e ? 1.0 : 0.0) +
                     (a == e && b == g ? 1.0 : 0.0));
          CHECK(std::abs(m4 - want) <= 1e-15);
        }
}

// same identities in exact integer arithmetic on the rational weights
void check_exact_identities(const Stencil& s) {
  long den = s.w_den[0];
  for (int i = 0; i < s.q; ++i) {
    CHECK(s.w_den[i] == den);
    CHECK(s.w[i] == double(s.w_num[i]) / double(den));
  }
  long w_sum = 0;
  for (int i = 0; i < s.q; ++i) w_sum += s.w_num[i];
  CHECK(w_sum == den);
  for (int a = 0; a < s.d; ++a)
    for (int b = 0; b < s.d; ++b) {
      long m2 = 0;
      for (int i = 0; i < s.q; ++i) m2 += s.w_num[i] * s.c[i][a] * s.c[i][b];
      CHECK(m2 * 3 == (a == b ? den : 0));  // cs2 = 1/3 exactly
    }
}
}  // namespace

TEST_CASE("D2Q9 layout and weights") {
  const Stencil s = make_stencil(StencilKind::D2Q9);
  CHECK(s.d == 2);
  CHECK(s.q == 9);
  CHECK(s.c[0][0] == 0);
  CHECK(s.c[0][1] == 0);
  CHECK(s.w[0] == doctest::Approx(4.0 / 9.0).epsilon(kTol));
  CHECK(s.cs2 == doctest::Approx(1.0 / 3.0).epsilon(kTol));
  // axis directions carry 1/9 and come before the 1/36 diagonals
  for (int i = 1; i <= 4; ++i) {
    CHECK(std::abs(s.c[i][0]) + std::abs(s.c[i][1]) == 1);
    CHECK(s.w[i] == doctest::Approx(1.0 / 9.0).epsilon(kTol));
  }
  for (int i = 5; i <= 8; ++i) {
    CHECK(std::abs(s.c[i][0]) + std::abs(s.c[i][1]) == 2);
    CHECK(s.w[i] == doctest::Approx(1.0 / 36.0).epsilon(kTol));
  }
}

TEST_CASE("D3Q19 layout and weights") {
  const Stencil s = make_stencil(StencilKind::D3Q19);
  CHECK(s.d == 3);
  CHECK(s.q == 19);
  CHECK(s.w[0] == doctest::Approx(1.0 / 3.0).epsilon(kTol));
  for (int i = 1; i <= 6; ++i)
    CHECK(s.w[i] == doctest::Approx(1.0 / 18.0).epsilon(kTol));
  for (int i = 7; i <= 18; ++i)
    CHECK(s.w[i] == doctest::Approx(1.0 / 36.0).epsilon(kTol));
}

TEST_CASE("moment identities hold for both stencils") {
  check_moment_identities(make_stencil(StencilKind::D2Q9));
  check_moment_identities(make_stencil(StencilKind::D3Q19));
  check_exact_identities(make_stencil(StencilKind::D2Q9));
  check_exact_identities(make_stencil(StencilKind::D3Q19));
}

TEST_CASE("opposite map is a negating involution") {
  for (const auto kind : {StencilKind::D2Q9, StencilKind::D3Q19}) {
    const Stencil s = make_stencil(kind);
    CHECK(opposite_index(s, 0) == 0);
    for (int i = 0; i < s.q; ++i) {
      const int j = opposite_index(s, i);
      for (int a = 0; a < 3; ++a) CHECK(s.c[j][a] == -s.c[i][a]);
      CHECK(opposite_index(s, j) == i);
    }
    CHECK_THROWS(opposite_index(s, s.q));
    CHECK_THROWS(opposite_index(s, -1));
  }
}
