#pragma once
// Pointwise exterior k-form on R^6: dense coefficients over the sorted
// multi-index basis in colexicographic order.  Plain value type, no heap.
#include <array>
#include <cmath>

#include "sympcy/multiindex.hpp"

namespace sympcy {

struct KForm {
  int degree = 0;
  std::array<double, kMaxDim> c{};  // first kDim[degree] entries are used

  KForm() = default;
  explicit KForm(int deg) : degree(deg) {}

  int dim() const { return kDim[degree]; }

  KForm& operator+=(const KForm& o) {
    for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    for (int i = 0; i < dim(); ++i) c[i] -= o.c[i];
    return *this;
  }
  KForm& operator*=(double s) {
    for (int i = 0; i < dim(); ++i) c[i] *= s;
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(KForm a, double s) { return a *= s; }
  friend KForm operator*(double s, KForm a) { return a *= s; }

  double maxnorm() const {
    double m = 0;
    for (int i = 0; i < dim(); ++i) m = std::fmax(m, std::fabs(c[i]));
    return m;
  }

  // Coefficient addressed by a basis mask of matching popcount.
  double& at_mask(std::uint8_t mask) { return c[Tables::get().rank_of[mask]]; }
  double at_mask(std::uint8_t mask) const { return c[Tables::get().rank_of[mask]]; }

  // Basis k-form from a list of 1-based axes, e.g. basis({1,3,5}).
  static KForm basis(std::initializer_list<int> axes, double coef = 1.0) {
    std::uint8_t m = 0;
    for (int a : axes) m = static_cast<std::uint8_t>(m | (1u << (a - 1)));
    KForm f(static_cast<int>(axes.size()));
    f.at_mask(m) = coef;
    return f;
  }
};

using Vec6 = std::array<double, 6>;

}  // namespace sympcy
