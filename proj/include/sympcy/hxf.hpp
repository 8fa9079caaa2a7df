#pragma once
// HXF1 container: one k-form field per file.  A text header line
//   HXF1 k n1 n2 n3 n4 n5 n6
// followed by C(6,k) * prod(n_i) little-endian IEEE doubles in axis-major,
// component-minor order (all components of a grid point are consecutive;
// grid points advance row-major with axis 1 slowest).  All failures are
// reported as std::runtime_error; the CLI maps them to its I/O exit code.
#include <string>

#include "sympcy/field.hpp"

namespace sympcy {

void write_hxf(const std::string& path, const FormField& f);
FormField read_hxf(const std::string& path);

}  // namespace sympcy
