#pragma once
// Exact-rational evaluation path.  Used by the expansion oracle to settle the
// convention constants (c_rho_sigma, the dd^s coefficients, kappa) beyond
// floating-point doubt.  Covers: rationals with overflow-checked arithmetic,
// polynomial coefficients in six variables, polynomial-coefficient forms, and
// wedge / star / d / d^s on them for the standard frame.
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "sympcy/multiindex.hpp"

namespace sympcy {

struct Rat {
  long long n = 0, d = 1;
  Rat() = default;
  Rat(long long num) : n(num), d(1) {}
  Rat(long long num, long long den);
  bool is_zero() const { return n == 0; }
  friend Rat operator+(const Rat&, const Rat&);
  friend Rat operator-(const Rat&, const Rat&);
  friend Rat operator*(const Rat&, const Rat&);
  friend Rat operator/(const Rat&, const Rat&);
  friend Rat operator-(const Rat& a) { Rat r; r.n = -a.n; r.d = a.d; return r; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }
  double to_double() const { return static_cast<double>(n) / static_cast<double>(d); }
  std::string str() const;
};

// Polynomial in x1..x6 with rational coefficients, keyed by exponent tuples.
struct RatPoly {
  std::map<std::array<int, 6>, Rat> t;
  static RatPoly constant(const Rat& c);
  static RatPoly monomial(const Rat& c, const std::array<int, 6>& pw);
  bool is_zero() const { return t.empty(); }
  Rat constant_term() const;
  RatPoly deriv(int axis) const;
  friend RatPoly operator+(const RatPoly&, const RatPoly&);
  friend RatPoly operator-(const RatPoly&, const RatPoly&);
  friend RatPoly operator*(const RatPoly&, const RatPoly&);
  RatPoly scaled(const Rat& c) const;
};

// Polynomial-coefficient k-form.
struct RatForm {
  int degree = 0;
  std::vector<RatPoly> comp;  // size kDim[degree]
  explicit RatForm(int deg = 0) : degree(deg), comp(kDim[deg]) {}
};

RatForm r_wedge(const RatForm& a, const RatForm& b);
RatForm r_star(const RatForm& a);   // standard frame, exact integer star matrices
RatForm r_d(const RatForm& a);
RatForm r_ds(const RatForm& a);     // (-1)^{k+1} star d star
RatForm r_add(const RatForm& a, const RatForm& b);
RatForm r_scale(const RatForm& a, const Rat& c);
RatForm r_mul_scalar(const RatPoly& s, const RatForm& a);

// Standard constant forms with rational coefficients.
RatForm r_rho0();
RatForm r_sigma0();
RatForm r_omega();
RatForm r_vol();

// phi_H = (1/2) x^T H x for a rational symmetric matrix.
RatPoly r_quadratic(const std::array<std::array<Rat, 6>, 6>& H);

// Exact integer star matrix entries for the standard frame (row-major,
// kDim[6-k] x kDim[k]); independent of the double-precision construction.
std::vector<long long> r_star_matrix(int k);

}  // namespace sympcy
