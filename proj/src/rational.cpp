#include "sympcy/rational.hpp"

#include <numeric>
#include <string>

namespace sympcy {

namespace {

long long checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<long long>(v);
}

Rat make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational: zero denominator");
  if (d < 0) { n = -n; d = -d; }
  __int128 a = n < 0 ? -n : n, b = d;
  while (b) { __int128 t = a % b; a = b; b = t; }
  if (a == 0) a = 1;
  Rat r;
  r.n = checked(n / a);
  r.d = checked(d / a);
  return r;
}

}  // namespace

Rat::Rat(long long num, long long den) { *this = make(num, den); }

Rat operator+(const Rat& a, const Rat& b) {
  return make(static_cast<__int128>(a.n) * b.d + static_cast<__int128>(b.n) * a.d,
              static_cast<__int128>(a.d) * b.d);
}
Rat operator-(const Rat& a, const Rat& b) {
  return make(static_cast<__int128>(a.n) * b.d - static_cast<__int128>(b.n) * a.d,
              static_cast<__int128>(a.d) * b.d);
}
Rat operator*(const Rat& a, const Rat& b) {
  return make(static_cast<__int128>(a.n) * b.n, static_cast<__int128>(a.d) * b.d);
}
Rat operator/(const Rat& a, const Rat& b) {
  if (b.n == 0) throw std::domain_error("rational: division by zero");
  return make(static_cast<__int128>(a.n) * b.d, static_cast<__int128>(a.d) * b.n);
}

std::string Rat::str() const {
  if (d == 1) return std::to_string(n);
  return std::to_string(n) + "/" + std::to_string(d);
}

RatPoly RatPoly::constant(const Rat& c) {
  RatPoly p;
  if (!c.is_zero()) p.t[{0, 0, 0, 0, 0, 0}] = c;
  return p;
}

RatPoly RatPoly::monomial(const Rat& c, const std::array<int, 6>& pw) {
  RatPoly p;
  if (!c.is_zero()) p.t[pw] = c;
  return p;
}

Rat RatPoly::constant_term() const {
  auto it = t.find({0, 0, 0, 0, 0, 0});
  return it == t.end() ? Rat(0) : it->second;
}

RatPoly RatPoly::deriv(int axis) const {
  RatPoly out;
  for (const auto& [pw, c] : t) {
    if (pw[axis] == 0) continue;
    auto q = pw;
    q[axis] -= 1;
    Rat nc = c * Rat(pw[axis]);
    auto it = out.t.find(q);
    if (it == out.t.end()) out.t[q] = nc;
    else {
      it->second = it->second + nc;
      if (it->second.is_zero()) out.t.erase(it);
    }
  }
  return out;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  RatPoly out = a;
  for (const auto& [pw, c] : b.t) {
    auto it = out.t.find(pw);
    if (it == out.t.end()) out.t[pw] = c;
    else {
      it->second = it->second + c;
      if (it->second.is_zero()) out.t.erase(it);
    }
  }
  return out;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + b.scaled(Rat(-1)); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  RatPoly out;
  for (const auto& [pa, ca] : a.t)
    for (const auto& [pb, cb] : b.t) {
      std::array<int, 6> pw;
      for (int i = 0; i < 6; ++i) pw[i] = pa[i] + pb[i];
      Rat c = ca * cb;
      auto it = out.t.find(pw);
      if (it == out.t.end()) out.t[pw] = c;
      else {
        it->second = it->second + c;
        if (it->second.is_zero()) out.t.erase(it);
      }
    }
  return out;
}

RatPoly RatPoly::scaled(const Rat& c) const {
  RatPoly out;
  if (c.is_zero()) return out;
  for (const auto& [pw, cc] : t) out.t[pw] = cc * c;
  return out;
}

RatForm r_wedge(const RatForm& a, const RatForm& b) {
  if (a.degree + b.degree > kAxes) throw std::invalid_argument("r_wedge: degree overflow");
  const Tables& T = Tables::get();
  RatForm out(a.degree + b.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) {
    if (a.comp[i].is_zero()) continue;
    std::uint8_t am = T.mask_of[a.degree][i];
    for (int j = 0; j < kDim[b.degree]; ++j) {
      if (b.comp[j].is_zero()) continue;
      int s = T.merge_sign[am][T.mask_of[b.degree][j]];
      if (s == 0) continue;
      int r = T.rank_of[am | T.mask_of[b.degree][j]];
      RatPoly term = (a.comp[i] * b.comp[j]).scaled(Rat(s));
      out.comp[r] = out.comp[r] + term;
    }
  }
  return out;
}

namespace {

// Integer determinant of a k x k matrix by cofactor expansion (k <= 6).
long long idet(const std::vector<long long>& m, int k) {
  if (k == 0) return 1;
  if (k == 1) return m[0];
  long long acc = 0;
  std::vector<long long> sub((k - 1) * (k - 1));
  for (int c = 0; c < k; ++c) {
    if (m[c] != 0) {
      for (int i = 1; i < k; ++i) {
        int sj = 0;
        for (int j = 0; j < k; ++j) {
          if (j == c) continue;
          sub[(i - 1) * (k - 1) + sj++] = m[i * k + j];
        }
      }
      long long cof = idet(sub, k - 1);
      acc += ((c & 1) ? -1 : 1) * m[c] * cof;
    }
  }
  return acc;
}

}  // namespace

std::vector<long long> r_star_matrix(int k) {
  const Tables& T = Tables::get();
  // P = -(omega^{-1}) for the standard omega: block-diagonal with P(2i,2i+1)=+1.
  long long P[6][6] = {};
  for (int b = 0; b < 3; ++b) {
    P[2 * b][2 * b + 1] = 1;
    P[2 * b + 1][2 * b] = -1;
  }
  std::vector<long long> S(static_cast<size_t>(kDim[6 - k]) * kDim[k], 0);
  for (int ri = 0; ri < kDim[k]; ++ri) {
    std::uint8_t mi = T.mask_of[k][ri];
    std::uint8_t mc = static_cast<std::uint8_t>(0x3f & ~mi);
    int rowc = T.rank_of[mc];
    long long eps = T.merge_sign[mi][mc];
    for (int ra = 0; ra < kDim[k]; ++ra) {
      std::uint8_t ma = T.mask_of[k][ra];
      std::vector<long long> sub(static_cast<size_t>(k) * k, 0);
      int r = 0;
      for (int i = 0; i < 6; ++i) {
        if (!(mi & (1u << i))) continue;
        int cix = 0;
        for (int j = 0; j < 6; ++j) {
          if (!(ma & (1u << j))) continue;
          sub[static_cast<size_t>(r) * k + cix++] = P[i][j];
        }
        ++r;
      }
      S[static_cast<size_t>(rowc) * kDim[k] + ra] = eps * idet(sub, k);
    }
  }
  return S;
}

RatForm r_star(const RatForm& a) {
  const int k = a.degree;
  static std::array<std::vector<long long>, 7> cache = [] {
    std::array<std::vector<long long>, 7> c;
    for (int kk = 0; kk <= 6; ++kk) c[kk] = r_star_matrix(kk);
    return c;
  }();
  const auto& S = cache[k];
  RatForm out(6 - k);
  for (int r = 0; r < kDim[6 - k]; ++r)
    for (int c = 0; c < kDim[k]; ++c) {
      long long s = S[static_cast<size_t>(r) * kDim[k] + c];
      if (s != 0 && !a.comp[c].is_zero())
        out.comp[r] = out.comp[r] + a.comp[c].scaled(Rat(s));
    }
  return out;
}

RatForm r_d(const RatForm& a) {
  if (a.degree >= 6) throw std::invalid_argument("r_d: degree overflow");
  const Tables& T = Tables::get();
  RatForm out(a.degree + 1);
  for (int j = 0; j < kDim[a.degree]; ++j) {
    if (a.comp[j].is_zero()) continue;
    std::uint8_t mj = T.mask_of[a.degree][j];
    for (int ax = 0; ax < 6; ++ax) {
      if (mj & (1u << ax)) continue;
      RatPoly dja = a.comp[j].deriv(ax);
      if (dja.is_zero()) continue;
      int s = T.merge_sign[1u << ax][mj];
      int r = T.rank_of[mj | (1u << ax)];
      out.comp[r] = out.comp[r] + dja.scaled(Rat(s));
    }
  }
  return out;
}

RatForm r_ds(const RatForm& a) {
  const int k = a.degree;
  if (k == 0) return RatForm(0);  // composite is identically zero on functions
  RatForm res = r_star(r_d(r_star(a)));
  int sgn = ((k + 1) % 2 == 0) ? 1 : -1;  // (-1)^{k+1}
  return r_scale(res, Rat(sgn));
}

RatForm r_add(const RatForm& a, const RatForm& b) {
  RatForm out = a;
  for (int i = 0; i < kDim[a.degree]; ++i) out.comp[i] = out.comp[i] + b.comp[i];
  return out;
}

RatForm r_scale(const RatForm& a, const Rat& c) {
  RatForm out(a.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) out.comp[i] = a.comp[i].scaled(c);
  return out;
}

RatForm r_mul_scalar(const RatPoly& s, const RatForm& a) {
  RatForm out(a.degree);
  for (int i = 0; i < kDim[a.degree]; ++i) out.comp[i] = s * a.comp[i];
  return out;
}

namespace {
RatForm basis3(std::initializer_list<int> axes, long long c) {
  std::uint8_t m = 0;
  for (int a : axes) m = static_cast<std::uint8_t>(m | (1u << (a - 1)));
  RatForm f(static_cast<int>(axes.size()));
  f.comp[Tables::get().rank_of[m]] = RatPoly::constant(Rat(c));
  return f;
}
}  // namespace

RatForm r_rho0() {
  return r_add(r_add(basis3({1, 3, 5}, 1), basis3({1, 4, 6}, -1)),
               r_add(basis3({2, 3, 6}, -1), basis3({2, 4, 5}, -1)));
}
RatForm r_sigma0() {
  return r_add(r_add(basis3({1, 3, 6}, 1), basis3({1, 4, 5}, 1)),
               r_add(basis3({2, 3, 5}, 1), basis3({2, 4, 6}, -1)));
}
RatForm r_omega() {
  return r_add(r_add(basis3({1, 2}, 1), basis3({3, 4}, 1)), basis3({5, 6}, 1));
}
RatForm r_vol() { return basis3({1, 2, 3, 4, 5, 6}, 1); }

RatPoly r_quadratic(const std::array<std::array<Rat, 6>, 6>& H) {
  RatPoly p;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (H[i][j].is_zero()) continue;
      std::array<int, 6> pw{};
      pw[i] += 1;
      pw[j] += 1;
      p = p + RatPoly::monomial(H[i][j] * Rat(1, 2), pw);
    }
  return p;
}

}  // namespace sympcy
