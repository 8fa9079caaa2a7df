#pragma once
// Exterior calculus on form fields: d, star_s, d^s = (-1)^{k+1} star d star,
// d^c, scalar multiplication, de-aliased wedge products, and the deformation
// operator phi -> (rho + s dd^s(phi sigma), sigma - s dd^s(phi rho)).
//
// Fields carrying an analytic description are differentiated and multiplied
// symbolically (exact, no periodicity assumption); purely grid-backed fields
// use spectral differentiation and 3/2-padded products.
#include <utility>

#include "sympcy/field.hpp"
#include "sympcy/frame.hpp"
#include "sympcy/stable3.hpp"

namespace sympcy {

FormField ext_d(const FormField& f);
FormField star_f(const SymplecticFrame& fr, const FormField& f);
FormField d_s(const SymplecticFrame& fr, const FormField& f);

// (d^c phi)(X) = -d phi(J X) for an almost-complex structure J.
FormField d_c(const FormField& phi, const Mat6& J);

// phi * f for a degree-0 field phi.
FormField mul_scalar(const FormField& phi, const FormField& f);

// Pointwise wedge on matching grids (no de-aliasing).
FormField wedge_plain(const FormField& a, const FormField& b);

// Wedge with 3/2-rule de-aliasing; symbolic when both factors are analytic.
FormField wedge_dealiased(const FormField& a, const FormField& b);

// top/vol as a degree-0 field.
FormField pairing_ratio_field(const FormField& top, const SymplecticFrame& fr);

std::pair<FormField, FormField> deform(const FormField& phi,
                                       const std::pair<FormField, FormField>& Omega,
                                       const SymplecticFrame& fr, int sign = +1);

// The standard constant holomorphic-volume pair (rho0, sigma0) on a grid.
std::pair<FormField, FormField> standard_omega_pair(const Grid& g);

}  // namespace sympcy
