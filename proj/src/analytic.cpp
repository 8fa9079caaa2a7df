#include "sympcy/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sympcy {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool term_key_less(const ATerm& a, const ATerm& b) {
  if (a.pw != b.pw) return a.pw < b.pw;
  if (a.fr != b.fr) return a.fr < b.fr;
  return a.theta < b.theta;
}

bool term_key_eq(const ATerm& a, const ATerm& b) {
  return a.pw == b.pw && a.fr == b.fr && std::fabs(a.theta - b.theta) <= 1e-12;
}

void canonicalize_term(ATerm& t) {
  bool all_zero = true;
  int first_sign = 0;
  for (int a = 0; a < 6; ++a) {
    if (t.fr[a] != 0) {
      all_zero = false;
      if (first_sign == 0) first_sign = t.fr[a] > 0 ? 1 : -1;
    }
  }
  if (all_zero) {
    // pure polynomial term: fold the phase into the coefficient
    t.coef *= std::cos(t.theta);
    t.theta = 0;
    return;
  }
  if (first_sign < 0) {
    // cos(-u) = cos(u): flip frequencies and phase together
    for (auto& f : t.fr) f = static_cast<std::int16_t>(-f);
    t.theta = -t.theta;
  }
  t.theta = std::fmod(t.theta, kTwoPi);
  if (t.theta < 0) t.theta += kTwoPi;
  // snap phases that are numerically a multiple of pi/2 (products and
  // derivatives only ever shift phases by pi/2)
  double q = t.theta / (kTwoPi / 4.0);
  double rq = std::round(q);
  if (std::fabs(q - rq) < 1e-9) {
    t.theta = std::fmod(rq, 4.0) * (kTwoPi / 4.0);
    if (rq == 4.0) t.theta = 0;
  }
}

}  // namespace

void Poly::canonicalize() {
  for (auto& term : t) canonicalize_term(term);
  std::sort(t.begin(), t.end(), term_key_less);
  std::vector<ATerm> merged;
  for (const auto& term : t) {
    if (!merged.empty() && term_key_eq(merged.back(), term))
      merged.back().coef += term.coef;
    else
      merged.push_back(term);
  }
  std::erase_if(merged, [](const ATerm& a) { return std::fabs(a.coef) < 1e-305; });
  t = std::move(merged);
}

Poly Poly::constant(double c) {
  Poly p;
  if (c != 0) {
    ATerm term;
    term.coef = c;
    p.t.push_back(term);
  }
  return p;
}

Poly Poly::monomial(double c, const std::array<int, 6>& pw) {
  Poly p;
  if (c != 0) {
    ATerm term;
    term.coef = c;
    for (int i = 0; i < 6; ++i) term.pw[i] = static_cast<std::int8_t>(pw[i]);
    p.t.push_back(term);
  }
  return p;
}

Poly Poly::cosine(double c, const std::array<int, 6>& fr, double theta) {
  Poly p;
  if (c != 0) {
    ATerm term;
    term.coef = c;
    for (int i = 0; i < 6; ++i) term.fr[i] = static_cast<std::int16_t>(fr[i]);
    term.theta = theta;
    p.t.push_back(term);
    p.canonicalize();
  }
  return p;
}

Poly Poly::quadratic(const std::array<std::array<double, 6>, 6>& H) {
  Poly p;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (H[i][j] == 0) continue;
      std::array<int, 6> pw{};
      pw[i] += 1;
      pw[j] += 1;
      p = p + monomial(0.5 * H[i][j], pw);
    }
  return p;
}

double Poly::eval(const std::array<double, 6>& x) const {
  double acc = 0;
  for (const auto& term : t) {
    double v = term.coef;
    double ph = term.theta;
    bool trig = false;
    for (int a = 0; a < 6; ++a) {
      for (int p = 0; p < term.pw[a]; ++p) v *= x[a];
      if (term.fr[a] != 0) {
        ph += term.fr[a] * x[a];
        trig = true;
      }
    }
    if (trig || term.theta != 0) v *= std::cos(ph);
    acc += v;
  }
  return acc;
}

Poly Poly::deriv(int axis) const {
  Poly out;
  for (const auto& term : t) {
    if (term.pw[axis] > 0) {
      ATerm d = term;
      d.coef *= term.pw[axis];
      d.pw[axis] = static_cast<std::int8_t>(d.pw[axis] - 1);
      out.t.push_back(d);
    }
    if (term.fr[axis] != 0) {
      // d/dx cos(u) = -m sin(u) = m cos(u + pi/2)
      ATerm d = term;
      d.coef *= term.fr[axis];
      d.theta += kTwoPi / 4.0;
      out.t.push_back(d);
    }
  }
  out.canonicalize();
  return out;
}

Poly Poly::scaled(double c) const {
  Poly out = *this;
  for (auto& term : out.t) term.coef *= c;
  out.canonicalize();
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out = a;
  out.t.insert(out.t.end(), b.t.begin(), b.t.end());
  out.canonicalize();
  return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(-1.0); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& ta : a.t)
    for (const auto& tb : b.t) {
      ATerm m;
      m.coef = ta.coef * tb.coef;
      for (int i = 0; i < 6; ++i) m.pw[i] = static_cast<std::int8_t>(ta.pw[i] + tb.pw[i]);
      const bool trig_a = std::any_of(ta.fr.begin(), ta.fr.end(), [](auto f) { return f != 0; }) || ta.theta != 0;
      const bool trig_b = std::any_of(tb.fr.begin(), tb.fr.end(), [](auto f) { return f != 0; }) || tb.theta != 0;
      if (!trig_a && !trig_b) {
        out.t.push_back(m);
      } else if (trig_a && !trig_b) {
        m.fr = ta.fr;
        m.theta = ta.theta;
        out.t.push_back(m);
      } else if (!trig_a && trig_b) {
        m.fr = tb.fr;
        m.theta = tb.theta;
        out.t.push_back(m);
      } else {
        // cos(u)cos(v) = (cos(u+v) + cos(u-v)) / 2
        ATerm s = m, d = m;
        s.coef *= 0.5;
        d.coef *= 0.5;
        for (int i = 0; i < 6; ++i) {
          s.fr[i] = static_cast<std::int16_t>(ta.fr[i] + tb.fr[i]);
          d.fr[i] = static_cast<std::int16_t>(ta.fr[i] - tb.fr[i]);
        }
        s.theta = ta.theta + tb.theta;
        d.theta = ta.theta - tb.theta;
        out.t.push_back(s);
        out.t.push_back(d);
      }
    }
  out.canonicalize();
  return out;
}

AField AField::constant_form(const KForm& f) {
  AField out(f.degree);
  for (int i = 0; i < f.dim(); ++i) out.comp[i] = Poly::constant(f.c[i]);
  return out;
}

AField a_add(const AField& a, const AField& b) {
  AField out(a.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) out.comp[i] = a.comp[i] + b.comp[i];
  return out;
}

AField a_sub(const AField& a, const AField& b) {
  AField out(a.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) out.comp[i] = a.comp[i] - b.comp[i];
  return out;
}

AField a_scale(const AField& a, double c) {
  AField out(a.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) out.comp[i] = a.comp[i].scaled(c);
  return out;
}

AField a_mul_scalar(const Poly& s, const AField& a) {
  AField out(a.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) out.comp[i] = s * a.comp[i];
  return out;
}

AField a_wedge(const AField& a, const AField& b) {
  if (a.degree + b.degree > kAxes) throw std::invalid_argument("a_wedge: degree overflow");
  const Tables& T = Tables::get();
  AField out(a.degree + b.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) {
    if (a.comp[i].is_zero()) continue;
    std::uint8_t am = T.mask_of[a.degree][i];
    for (int j = 0; j < kDim[b.degree]; ++j) {
      if (b.comp[j].is_zero()) continue;
      int s = T.merge_sign[am][T.mask_of[b.degree][j]];
      if (s == 0) continue;
      int r = T.rank_of[am | T.mask_of[b.degree][j]];
      out.comp[r] = out.comp[r] + (a.comp[i] * b.comp[j]).scaled(s);
    }
  }
  return out;
}

AField a_star(const SymplecticFrame& f, const AField& a) {
  const int k = a.degree;
  AField out(6 - k);
  for (int r = 0; r < kDim[6 - k]; ++r) {
    Poly acc;
    for (int c = 0; c < kDim[k]; ++c) {
      double s = f.star[k][static_cast<size_t>(r) * kDim[k] + c];
      if (s != 0 && !a.comp[c].is_zero()) acc = acc + a.comp[c].scaled(s);
    }
    out.comp[r] = acc;
  }
  return out;
}

AField a_d(const AField& a) {
  if (a.degree >= 6) throw std::invalid_argument("a_d: degree overflow");
  const Tables& T = Tables::get();
  AField out(a.degree + 1);
  for (int j = 0; j < kDim[a.degree]; ++j) {
    if (a.comp[j].is_zero()) continue;
    std::uint8_t mj = T.mask_of[a.degree][j];
    for (int ax = 0; ax < 6; ++ax) {
      if (mj & (1u << ax)) continue;
      Poly dja = a.comp[j].deriv(ax);
      if (dja.is_zero()) continue;
      int s = T.merge_sign[1u << ax][mj];
      int r = T.rank_of[mj | (1u << ax)];
      out.comp[r] = out.comp[r] + dja.scaled(s);
    }
  }
  return out;
}

AField a_ds(const SymplecticFrame& f, const AField& a) {
  const int k = a.degree;
  if (k == 0) return AField(0);
  AField res = a_star(f, a_d(a_star(f, a)));
  return ((k + 1) % 2 == 0) ? res : a_scale(res, -1.0);
}

KForm a_eval(const AField& a, const std::array<double, 6>& x) {
  KForm out(a.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) out.c[i] = a.comp[i].eval(x);
  return out;
}

}  // namespace sympcy
