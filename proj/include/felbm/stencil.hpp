#pragma once

#include <array>

namespace felbm {

inline constexpr int kMaxQ = 19;
inline constexpr double kCs2 = 1.0 / 3.0;  // lattice speed of sound squared
inline constexpr double kCs4 = kCs2 * kCs2;
// exact reciprocals used in the kernels (3, 9, 4.5, 1.5 are representable)
inline constexpr double kInvCs2 = 3.0;
inline constexpr double kInvCs4 = 9.0;
inline constexpr double kHalfInvCs4 = 4.5;
inline constexpr double kHalfInvCs2 = 1.5;

enum class StencilKind { D2Q9, D3Q19 };

/// Discrete velocity set DdQq. Index 0 is the rest velocity; axis directions
/// precede diagonals, each group in lexicographic order of the components.
/// Weights are stored as exact rationals and converted to double once.
struct Stencil {
  int d = 0;
  int q = 0;
  std::array<std::array<int, 3>, kMaxQ> c{};  // c[i][2] == 0 in 2D
  std::array<double, kMaxQ> w{};
  std::array<int, kMaxQ> w_num{};
  std::array<int, kMaxQ> w_den{};
  std::array<int, kMaxQ> opp{};  // c[opp[i]] == -c[i]
  double cs2 = kCs2;
};

Stencil make_stencil(StencilKind kind);

/// Index j with c_j == -c_i. Total over 0 <= i < q; asserts otherwise.
int opposite_index(const Stencil& s, int i);

}  // namespace felbm
