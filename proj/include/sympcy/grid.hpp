#pragma once
// Periodic grid over [0, 2pi)^6.  Inert axes have size 1; fields are constant
// along them and derivatives there vanish identically.
#include <array>
#include <cmath>

namespace sympcy {

struct Grid {
  std::array<int, 6> n{1, 1, 1, 1, 1, 1};

  Grid() = default;
  explicit Grid(const std::array<int, 6>& sizes) : n(sizes) {}

  long long npts() const {
    long long p = 1;
    for (int a = 0; a < 6; ++a) p *= n[a];
    return p;
  }
  bool active(int axis) const { return n[axis] > 1; }
  int active_count() const {
    int c = 0;
    for (int a = 0; a < 6; ++a) c += active(a);
    return c;
  }
  double spacing(int axis) const { return 2.0 * M_PI / n[axis]; }

  // Row-major linear index, axis 1 slowest / axis 6 fastest.
  long long index(const std::array<int, 6>& i) const {
    long long idx = 0;
    for (int a = 0; a < 6; ++a) idx = idx * n[a] + i[a];
    return idx;
  }
  std::array<int, 6> coords(long long idx) const {
    std::array<int, 6> i{};
    for (int a = 5; a >= 0; --a) {
      i[a] = static_cast<int>(idx % n[a]);
      idx /= n[a];
    }
    return i;
  }
  std::array<double, 6> point(long long idx) const {
    auto i = coords(idx);
    std::array<double, 6> x{};
    for (int a = 0; a < 6; ++a) x[a] = i[a] * spacing(a);
    return x;
  }
  bool operator==(const Grid& o) const { return n == o.n; }
};

}  // namespace sympcy
