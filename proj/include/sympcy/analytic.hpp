#pragma once
// Closed-form scalar functions on R^6 and form fields built from them.
// A Poly is a finite sum of terms  c * prod_a x_a^{p_a} * cos(sum_a m_a x_a + theta);
// the family is closed under differentiation and products, which covers every
// closed-form input used by the build (quadratics, trigonometric polynomials,
// and their images under d, star_s, d^s).  Fields with an analytic description
// are differentiated symbolically, which is exact and needs no periodicity.
#include <array>
#include <cstdint>
#include <vector>

#include "sympcy/frame.hpp"
#include "sympcy/kform.hpp"

namespace sympcy {

struct ATerm {
  double coef = 0;
  std::array<std::int8_t, 6> pw{};    // monomial powers
  std::array<std::int16_t, 6> fr{};   // cosine frequencies
  double theta = 0;                   // cosine phase
};

struct Poly {
  std::vector<ATerm> t;

  static Poly zero() { return {}; }
  static Poly constant(double c);
  static Poly monomial(double c, const std::array<int, 6>& pw);
  // c * cos(sum fr_a x_a + theta)
  static Poly cosine(double c, const std::array<int, 6>& fr, double theta);
  // (1/2) x^T H x
  static Poly quadratic(const std::array<std::array<double, 6>, 6>& H);

  bool is_zero() const { return t.empty(); }
  double eval(const std::array<double, 6>& x) const;
  Poly deriv(int axis) const;
  Poly scaled(double c) const;
  friend Poly operator+(const Poly&, const Poly&);
  friend Poly operator-(const Poly&, const Poly&);
  friend Poly operator*(const Poly&, const Poly&);

  void canonicalize();
};

// k-form with Poly components.
struct AField {
  int degree = 0;
  std::array<Poly, kMaxDim> comp;
  explicit AField(int deg = 0) : degree(deg) {}
  static AField constant_form(const KForm& f);
};

AField a_add(const AField& a, const AField& b);
AField a_sub(const AField& a, const AField& b);
AField a_scale(const AField& a, double c);
AField a_mul_scalar(const Poly& s, const AField& a);
AField a_wedge(const AField& a, const AField& b);
AField a_star(const SymplecticFrame& f, const AField& a);
AField a_d(const AField& a);
AField a_ds(const SymplecticFrame& f, const AField& a);
KForm a_eval(const AField& a, const std::array<double, 6>& x);

}  // namespace sympcy
