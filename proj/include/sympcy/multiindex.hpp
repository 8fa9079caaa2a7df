#pragma once
// Multi-index bookkeeping for the exterior algebra over a 6-dimensional space.
//
// A sorted multi-index {i1 < ... < ik} with axes in {1..6} is stored as a
// 6-bit mask (bit a set <=> axis a+1 present).  Enumerating the masks of a
// fixed popcount in increasing numeric order yields exactly the
// colexicographic order of the index sets, which is the coefficient layout
// used throughout.  All wedge / interior / complement signs are resolved by
// inversion counting on masks and cached in one table built at startup.
#include <array>
#include <cstdint>
#include <vector>

namespace sympcy {

constexpr int kAxes = 6;
constexpr std::array<int, 7> kDim = {1, 6, 15, 20, 15, 6, 1};  // C(6,k)
constexpr int kMaxDim = 20;

struct Tables {
  // mask_of[k][r]: mask of the rank-r index set of degree k (colex order).
  std::array<std::vector<std::uint8_t>, 7> mask_of;
  // rank_of[mask]: rank of the mask within its own degree class.
  std::array<std::int8_t, 64> rank_of;
  std::array<std::int8_t, 64> popcnt;
  // merge_sign[a][b]: sign of e_A ^ e_B for disjoint masks (0 if they overlap).
  std::int8_t merge_sign[64][64];

  static const Tables& get();

 private:
  Tables();
};

// Parity sign of interleaving B after A: (-1)^{#{(a,b): a in A, b in B, a > b}}.
int merge_sign(std::uint8_t a, std::uint8_t b);

}  // namespace sympcy
