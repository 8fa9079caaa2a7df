#include "sympcy/exterior.hpp"

#include <bit>

namespace sympcy {

KForm wedge(const KForm& a, const KForm& b) {
  if (a.degree + b.degree > kAxes) throw std::invalid_argument("wedge: degree overflow");
  const Tables& T = Tables::get();
  KForm out(a.degree + b.degree);
  const auto& ma = T.mask_of[a.degree];
  const auto& mb = T.mask_of[b.degree];
  for (int i = 0; i < a.dim(); ++i) {
    const double ai = a.c[i];
    if (ai == 0.0) continue;
    const std::uint8_t am = ma[i];
    for (int j = 0; j < b.dim(); ++j) {
      const int s = T.merge_sign[am][mb[j]];
      if (s == 0) continue;
      out.c[T.rank_of[am | mb[j]]] += s * ai * b.c[j];
    }
  }
  return out;
}

KForm interior_axis(int axis, const KForm& a) {
  if (a.degree == 0) throw std::invalid_argument("interior: degree-0 input");
  const Tables& T = Tables::get();
  KForm out(a.degree - 1);
  const std::uint8_t abit = static_cast<std::uint8_t>(1u << axis);
  for (int i = 0; i < a.dim(); ++i) {
    const std::uint8_t m = T.mask_of[a.degree][i];
    if (!(m & abit)) continue;
    // sign: (-1)^{#axes below `axis` present in m}
    const int below = std::popcount(static_cast<unsigned>(m & (abit - 1)));
    const double s = (below & 1) ? -1.0 : 1.0;
    out.c[T.rank_of[m & ~abit]] += s * a.c[i];
  }
  return out;
}

KForm interior(const Vec6& v, const KForm& a) {
  KForm out(a.degree - 1);
  if (a.degree == 0) throw std::invalid_argument("interior: degree-0 input");
  for (int ax = 0; ax < kAxes; ++ax)
    if (v[ax] != 0.0) out += v[ax] * interior_axis(ax, a);
  return out;
}

KForm omega_std() {
  return KForm::basis({1, 2}) + KForm::basis({3, 4}) + KForm::basis({5, 6});
}

KForm rho0() {
  return KForm::basis({1, 3, 5}) - KForm::basis({1, 4, 6}) - KForm::basis({2, 3, 6}) -
         KForm::basis({2, 4, 5});
}

KForm sigma0() {
  return KForm::basis({1, 3, 6}) + KForm::basis({1, 4, 5}) + KForm::basis({2, 3, 5}) -
         KForm::basis({2, 4, 6});
}

KForm vol_std() { return KForm::basis({1, 2, 3, 4, 5, 6}); }

}  // namespace sympcy
