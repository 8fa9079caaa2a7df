#include "sympcy/multiindex.hpp"

#include <bit>

namespace sympcy {

int merge_sign(std::uint8_t a, std::uint8_t b) {
  if (a & b) return 0;
  int inv = 0;
  for (int bit = 0; bit < kAxes; ++bit) {
    if (b & (1u << bit)) {
      // axes of A strictly above this element of B
      inv += std::popcount(static_cast<unsigned>(a >> (bit + 1)));
    }
  }
  return (inv & 1) ? -1 : 1;
}

Tables::Tables() {
  for (auto& r : rank_of) r = -1;
  for (int m = 0; m < 64; ++m) {
    int k = std::popcount(static_cast<unsigned>(m));
    popcnt[m] = static_cast<std::int8_t>(k);
    rank_of[m] = static_cast<std::int8_t>(mask_of[k].size());
    mask_of[k].push_back(static_cast<std::uint8_t>(m));
  }
  for (int a = 0; a < 64; ++a)
    for (int b = 0; b < 64; ++b)
      merge_sign[a][b] = static_cast<std::int8_t>(
          sympcy::merge_sign(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));
}

const Tables& Tables::get() {
  static const Tables t;
  return t;
}

}  // namespace sympcy
