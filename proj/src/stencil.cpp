#include "felbm/stencil.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

namespace felbm {

namespace {

struct Velocity {
  std::array<int, 3> c;
  int norm2;
};

// Enumerate {-1,0,1}^d, keep |c|^2 <= max_norm2, order rest < axis < diagonal
// with lexicographic order inside each group.
std::vector<Velocity> enumerate(int d, int max_norm2) {
  std::vector<Velocity> vs;
  const int lo = -1, hi = 1;
  for (int z = (d == 3 ? lo : 0); z <= (d == 3 ? hi : 0); ++z)
    for (int y = lo; y <= hi; ++y)
      for (int x = lo; x <= hi; ++x) {
        const int n2 = x * x + y * y + z * z;
        if (n2 <= max_norm2) vs.push_back({{x, y, z}, n2});
      }
  std::sort(vs.begin(), vs.end(), [](const Velocity& a, const Velocity& b) {
    const int ga = a.norm2 == 0 ? 0 : (a.norm2 == 1 ? 1 : 2);
    const int gb = b.norm2 == 0 ? 0 : (b.norm2 == 1 ? 1 : 2);
    if (ga != gb) return ga < gb;
    return a.c < b.c;
  });
  return vs;
}

}  // namespace

Stencil make_stencil(StencilKind kind) {
  Stencil s;
  s.cs2 = kCs2;
  // weight numerators per |c|^2 group; common denominator per stencil
  int num[3];
  int den;
  if (kind == StencilKind::D2Q9) {
    s.d = 2;
    den = 36;
    num[0] = 16;  // 4/9
    num[1] = 4;   // 1/9
    num[2] = 1;   // 1/36
  } else {
    s.d = 3;
    den = 36;
    num[0] = 12;  // 1/3
    num[1] = 2;   // 1/18
    num[2] = 1;   // 1/36
  }
  const auto vs = enumerate(s.d, 2);
  s.q = static_cast<int>(vs.size());
  assert(s.q == (s.d == 2 ? 9 : 19));
  for (int i = 0; i < s.q; ++i) {
    s.c[i] = vs[i].c;
    s.w_num[i] = num[vs[i].norm2];
    s.w_den[i] = den;
    s.w[i] = static_cast<double>(s.w_num[i]) / static_cast<double>(s.w_den[i]);
  }
  for (int i = 0; i < s.q; ++i) {
    int j = -1;
    for (int k = 0; k < s.q; ++k)
      if (s.c[k][0] == -s.c[i][0] && s.c[k][1] == -s.c[i][1] &&
          s.c[k][2] == -s.c[i][2]) {
        j = k;
        break;
      }
    assert(j >= 0);
    s.opp[i] = j;
  }
  return s;
}

int opposite_index(const Stencil& s, int i) {
  if (i < 0 || i >= s.q) throw std::out_of_range("velocity index out of range");
  return s.opp[i];
}

}  // namespace felbm
