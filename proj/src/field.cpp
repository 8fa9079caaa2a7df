#include "sympcy/field.hpp"

#include <cmath>
#include <stdexcept>

#include "sympcy/util.hpp"

namespace sympcy {

FormField FormField::constant(const Grid& g, const KForm& f) {
  FormField out(g, f.degree);
  const long long np = g.npts();
  for (int c = 0; c < out.ncomp(); ++c) {
    double* plane = out.comp(c);
    for (long long p = 0; p < np; ++p) plane[p] = f.c[c];
  }
  out.ana = AField::constant_form(f);
  return out;
}

FormField FormField::from_analytic(const Grid& g, const AField& a) {
  FormField out(g, a.degree);
  const long long np = g.npts();
  parallel_for(np, [&](long long lo, long long hi) {
    for (long long p = lo; p < hi; ++p) {
      auto x = g.point(p);
      for (int c = 0; c < out.ncomp(); ++c) out.comp(c)[p] = a.comp[c].eval(x);
    }
  });
  out.ana = a;
  return out;
}

FormField FormField::scalar_analytic(const Grid& g, const Poly& p) {
  AField a(0);
  a.comp[0] = p;
  return from_analytic(g, a);
}

double FormField::maxnorm() const {
  double m = 0;
  for (double x : v) m = std::fmax(m, std::fabs(x));
  return m;
}

double FormField::mean(int c) const {
  // serial accumulation in index order: reproducible
  const double* plane = comp(c);
  double acc = 0;
  const long long np = npts();
  for (long long p = 0; p < np; ++p) acc += plane[p];
  return acc / static_cast<double>(np);
}

FormField& FormField::operator+=(const FormField& o) {
  if (!(grid == o.grid) || degree != o.degree)
    throw std::invalid_argument("field +=: mismatched grid or degree");
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  if (ana && o.ana)
    ana = a_add(*ana, *o.ana);
  else
    ana.reset();
  return *this;
}

FormField& FormField::operator-=(const FormField& o) {
  if (!(grid == o.grid) || degree != o.degree)
    throw std::invalid_argument("field -=: mismatched grid or degree");
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  if (ana && o.ana)
    ana = a_sub(*ana, *o.ana);
  else
    ana.reset();
  return *this;
}

FormField& FormField::operator*=(double s) {
  for (double& x : v) x *= s;
  if (ana) ana = a_scale(*ana, s);
  return *this;
}

}  // namespace sympcy
