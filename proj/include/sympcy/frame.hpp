#pragma once
// The constant symplectic frame: omega, its inverse bivector, the volume form
// vol = omega^3/3!, and the symplectic Hodge star on every degree.
//
// The star is defined by the pairing relation
//     b ^ star_s(a) = G_k(b, a) vol        for all b of degree k = deg(a),
// where G_k is the determinant extension of the Poisson pairing
// P(e_i, e_j) = -(omega^{-1})_{ij} to k-forms: on decomposables,
// G_k(b1^..^bk, a1^..^ak) = det[P(b_i, a_j)].  For the standard frame the
// resulting star matrices are integer-valued and star_s is an involution.
#include <array>
#include <vector>

#include "sympcy/exterior.hpp"
#include "sympcy/kform.hpp"

namespace sympcy {

struct SymplecticFrame {
  KForm omega;                                 // degree 2
  std::array<std::array<double, 6>, 6> omega_mat;  // omega(e_i, e_j)
  std::array<std::array<double, 6>, 6> omega_inv;  // true matrix inverse: inv * mat = Id
  KForm vol;                                   // omega^3 / 3!
  int orientation = +1;
  // Star matrices: star[k] has kDim[6-k] rows x kDim[k] cols, row-major.
  std::array<std::vector<double>, 7> star;
};

// Builds a frame from an arbitrary nondegenerate 2-form.  The optional fault
// flag flips the sign of the degree-2 star block; it exists solely so the
// verification command can demonstrate that the invariant suite catches a
// star-convention error.
SymplecticFrame make_frame(const KForm& omega, bool inject_star_sign_error = false);
SymplecticFrame make_standard_frame(bool inject_star_sign_error = false);

KForm star_s(const SymplecticFrame& f, const KForm& a);

// Unique c with top = c * vol.
double pairing_ratio(const KForm& top, const SymplecticFrame& f);

// G_k(b, a) for basis ranks, exposed for the invariant suite.
double gk_pairing(const SymplecticFrame& f, int k, int rank_b, int rank_a);

}  // namespace sympcy
