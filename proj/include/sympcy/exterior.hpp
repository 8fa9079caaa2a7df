#pragma once
// Wedge product and interior product on pointwise forms.
#include <stdexcept>

#include "sympcy/kform.hpp"

namespace sympcy {

KForm wedge(const KForm& a, const KForm& b);

// Contraction with a coordinate direction (0-based axis).
KForm interior_axis(int axis, const KForm& a);

// Contraction with an arbitrary vector.
KForm interior(const Vec6& v, const KForm& a);

// Standard reference forms.
KForm omega_std();    // e12 + e34 + e56
KForm rho0();         // Re(dz^123) = e135 - e146 - e236 - e245
KForm sigma0();       // Im(dz^123) = e136 + e145 + e235 - e246
KForm vol_std();      // e123456

}  // namespace sympcy
