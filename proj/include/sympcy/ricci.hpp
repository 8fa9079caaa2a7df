#pragma once
// Ricci curvature probe: from the deformed real part rho~, build the almost
// complex structure pointwise, assemble g = omega(. , J~ .), symmetrize, and
// evaluate the Ricci tensor of the symmetrized metric through spectral
// derivatives of its Christoffel symbols.
#include <vector>

#include "sympcy/field.hpp"
#include "sympcy/frame.hpp"

namespace sympcy {

// Symmetric 6x6 matrix field, packed upper triangle (i <= j).
struct SymMatField {
  Grid grid;
  std::vector<double> v;  // idx(i,j) * npts + p

  explicit SymMatField(const Grid& g)
      : grid(g), v(21 * static_cast<size_t>(g.npts()), 0.0) {}
  static int idx(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * 6 - i * (i + 1) / 2 + j;  // row-major upper triangle
  }
  double* comp(int i, int j) { return v.data() + static_cast<size_t>(idx(i, j)) * grid.npts(); }
  const double* comp(int i, int j) const {
    return v.data() + static_cast<size_t>(idx(i, j)) * grid.npts();
  }
};

struct RicciResult {
  bool available = false;     // rho~ stable of complex type at every point
  bool trusted = false;       // antisymmetric part of omega(.,J.) negligible
  double antisym_worst = 0.0;
  double ricci_norm = 0.0;    // max |R_ij| over points and components
};

// Max-norm of the Ricci tensor of a (pointwise invertible) metric field.
double ricci_norm_of_metric(const SymMatField& g);

RicciResult ricci_probe(const FormField& rho_t, const SymplecticFrame& fr);

}  // namespace sympcy
