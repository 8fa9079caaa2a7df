#include "sympcy/calculus.hpp"

#include <stdexcept>

#include "sympcy/exterior.hpp"
#include "sympcy/spectral.hpp"
#include "sympcy/util.hpp"

namespace sympcy {

FormField ext_d(const FormField& f) {
  if (f.degree >= 6) throw std::invalid_argument("ext_d: degree-6 input");
  const Tables& T = Tables::get();
  if (f.ana) {
    AField da = a_d(*f.ana);
    return FormField::from_analytic(f.grid, da);
  }
  FormField out(f.grid, f.degree + 1);
  const long long np = f.npts();
  std::vector<double> der(np);
  for (int j = 0; j < f.ncomp(); ++j) {
    std::uint8_t mj = T.mask_of[f.degree][j];
    for (int ax = 0; ax < 6; ++ax) {
      if (mj & (1u << ax)) continue;
      if (!f.grid.active(ax)) continue;
      spectral_derivative(f.grid, f.comp(j), ax, der.data());
      const int s = T.merge_sign[1u << ax][mj];
      double* tgt = out.comp(T.rank_of[mj | (1u << ax)]);
      for (long long p = 0; p < np; ++p) tgt[p] += s * der[p];
    }
  }
  return out;
}

FormField star_f(const SymplecticFrame& fr, const FormField& f) {
  if (f.ana) return FormField::from_analytic(f.grid, a_star(fr, *f.ana));
  const int k = f.degree;
  FormField out(f.grid, 6 - k);
  const long long np = f.npts();
  const auto& S = fr.star[k];
  for (int r = 0; r < kDim[6 - k]; ++r) {
    double* tgt = out.comp(r);
    for (int c = 0; c < kDim[k]; ++c) {
      const double s = S[static_cast<size_t>(r) * kDim[k] + c];
      if (s == 0.0) continue;
      const double* src = f.comp(c);
      for (long long p = 0; p < np; ++p) tgt[p] += s * src[p];
    }
  }
  return out;
}

FormField d_s(const SymplecticFrame& fr, const FormField& f) {
  const int k = f.degree;
  if (k == 0) return FormField::zeros(f.grid, 0);
  FormField res = star_f(fr, ext_d(star_f(fr, f)));
  if ((k + 1) % 2 != 0) res *= -1.0;
  return res;
}

FormField d_c(const FormField& phi, const Mat6& J) {
  if (phi.degree != 0) throw std::invalid_argument("d_c: need a degree-0 field");
  FormField dphi = ext_d(phi);
  // (d^c phi)_a = -sum_m (d phi)_m J(m, a)
  if (dphi.ana) {
    AField out(1);
    for (int a = 0; a < 6; ++a) {
      Poly acc;
      for (int m = 0; m < 6; ++m)
        if (J(m, a) != 0.0) acc = acc + dphi.ana->comp[m].scaled(-J(m, a));
      out.comp[a] = acc;
    }
    return FormField::from_analytic(phi.grid, out);
  }
  FormField out(phi.grid, 1);
  const long long np = phi.npts();
  for (int a = 0; a < 6; ++a) {
    double* tgt = out.comp(a);
    for (int m = 0; m < 6; ++m) {
      const double j = J(m, a);
      if (j == 0.0) continue;
      const double* src = dphi.comp(m);
      for (long long p = 0; p < np; ++p) tgt[p] -= j * src[p];
    }
  }
  return out;
}

FormField mul_scalar(const FormField& phi, const FormField& f) {
  if (phi.degree != 0) throw std::invalid_argument("mul_scalar: phi must have degree 0");
  if (!(phi.grid == f.grid)) throw std::invalid_argument("mul_scalar: grid mismatch");
  FormField out(f.grid, f.degree);
  const long long np = f.npts();
  const double* s = phi.comp(0);
  for (int c = 0; c < f.ncomp(); ++c) {
    const double* src = f.comp(c);
    double* tgt = out.comp(c);
    for (long long p = 0; p < np; ++p) tgt[p] = s[p] * src[p];
  }
  if (phi.ana && f.ana) out.ana = a_mul_scalar(phi.ana->comp[0], *f.ana);
  return out;
}

FormField wedge_plain(const FormField& a, const FormField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("wedge: grid mismatch");
  if (a.degree + b.degree > 6) throw std::invalid_argument("wedge: degree overflow");
  const Tables& T = Tables::get();
  FormField out(a.grid, a.degree + b.degree);
  const long long np = a.npts();
  for (int i = 0; i < a.ncomp(); ++i) {
    const std::uint8_t am = T.mask_of[a.degree][i];
    const double* ai = a.comp(i);
    for (int j = 0; j < b.ncomp(); ++j) {
      const int s = T.merge_sign[am][T.mask_of[b.degree][j]];
      if (s == 0) continue;
      const double* bj = b.comp(j);
      double* tgt = out.comp(T.rank_of[am | T.mask_of[b.degree][j]]);
      for (long long p = 0; p < np; ++p) tgt[p] += s * ai[p] * bj[p];
    }
  }
  if (a.ana && b.ana) out.ana = a_wedge(*a.ana, *b.ana);
  return out;
}

namespace {

FormField resample(const FormField& f, const Grid& gout, bool padding) {
  if (f.ana) return FormField::from_analytic(gout, *f.ana);  // exact resample
  FormField out(gout, f.degree);
  for (int c = 0; c < f.ncomp(); ++c) {
    if (padding)
      pad_to(f.grid, f.comp(c), gout, out.comp(c));
    else
      truncate_to(f.grid, f.comp(c), gout, out.comp(c));
  }
  return out;
}

}  // namespace

FormField wedge_dealiased(const FormField& a, const FormField& b) {
  if (a.ana && b.ana) return wedge_plain(a, b);  // symbolic product, alias-free
  const Grid gp = padded_grid(a.grid);
  FormField ap = resample(a, gp, true);
  FormField bp = resample(b, gp, true);
  FormField prod = wedge_plain(ap, bp);
  prod.ana.reset();
  return resample(prod, a.grid, false);
}

FormField pairing_ratio_field(const FormField& top, const SymplecticFrame& fr) {
  if (top.degree != 6) throw std::invalid_argument("pairing_ratio: need a 6-form field");
  FormField out(top.grid, 0);
  const double inv = 1.0 / fr.vol.c[0];
  const long long np = top.npts();
  const double* src = top.comp(0);
  double* tgt = out.comp(0);
  for (long long p = 0; p < np; ++p) tgt[p] = src[p] * inv;
  if (top.ana) out.ana = [&] {
    AField o(0);
    o.comp[0] = top.ana->comp[0].scaled(inv);
    return o;
  }();
  return out;
}

std::pair<FormField, FormField> deform(const FormField& phi,
                                       const std::pair<FormField, FormField>& Omega,
                                       const SymplecticFrame& fr, int sign) {
  const FormField& rho = Omega.first;
  const FormField& sigma = Omega.second;
  FormField A = ext_d(d_s(fr, mul_scalar(phi, sigma)));  // dd^s(phi sigma)
  FormField B = ext_d(d_s(fr, mul_scalar(phi, rho)));    // dd^s(phi rho)
  FormField rt = rho;
  FormField st = sigma;
  if (sign >= 0) {
    rt += A;
    st -= B;
  } else {
    rt -= A;
    st += B;
  }
  return {std::move(rt), std::move(st)};
}

std::pair<FormField, FormField> standard_omega_pair(const Grid& g) {
  return {FormField::constant(g, rho0()), FormField::constant(g, sigma0())};
}

}  // namespace sympcy
