#pragma once
// Degree-k form-valued field on the periodic grid.  Grid values are always
// materialized (component-major planes); an optional analytic description
// rides along and, when present, makes differentiation exact and products
// alias-free (both are then done symbolically).
#include <optional>
#include <vector>

#include "sympcy/analytic.hpp"
#include "sympcy/grid.hpp"
#include "sympcy/kform.hpp"

namespace sympcy {

struct FormField {
  Grid grid;
  int degree = 0;
  std::vector<double> v;          // comp * npts + point
  std::optional<AField> ana;

  FormField() = default;
  FormField(const Grid& g, int deg)
      : grid(g), degree(deg), v(static_cast<size_t>(kDim[deg]) * g.npts(), 0.0) {}

  static FormField zeros(const Grid& g, int deg) { return FormField(g, deg); }
  static FormField constant(const Grid& g, const KForm& f);
  static FormField from_analytic(const Grid& g, const AField& a);
  static FormField scalar_analytic(const Grid& g, const Poly& p);

  long long npts() const { return grid.npts(); }
  int ncomp() const { return kDim[degree]; }
  double* comp(int c) { return v.data() + static_cast<size_t>(c) * npts(); }
  const double* comp(int c) const { return v.data() + static_cast<size_t>(c) * npts(); }

  KForm at(long long p) const {
    KForm f(degree);
    for (int c = 0; c < ncomp(); ++c) f.c[c] = comp(c)[p];
    return f;
  }
  void set(long long p, const KForm& f) {
    for (int c = 0; c < ncomp(); ++c) comp(c)[p] = f.c[c];
  }

  double maxnorm() const;
  double mean(int c = 0) const;  // grid average of one component

  FormField& operator+=(const FormField& o);
  FormField& operator-=(const FormField& o);
  FormField& operator*=(double s);
  friend FormField operator+(FormField a, const FormField& b) { return a += b; }
  friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
  friend FormField operator*(FormField a, double s) { return a *= s; }
  friend FormField operator*(double s, FormField a) { return a *= s; }
};

}  // namespace sympcy
