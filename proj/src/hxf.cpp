#include "sympcy/hxf.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sympcy {

namespace {

std::uint64_t bswap64(std::uint64_t x) {
  x = ((x & 0x00000000FFFFFFFFull) << 32) | (x >> 32);
  x = ((x & 0x0000FFFF0000FFFFull) << 16) | ((x >> 16) & 0x0000FFFF0000FFFFull);
  x = ((x & 0x00FF00FF00FF00FFull) << 8) | ((x >> 8) & 0x00FF00FF00FF00FFull);
  return x;
}

constexpr bool kBigEndianHost = std::endian::native == std::endian::big;

void to_le(double* buf, size_t n) {
  if (!kBigEndianHost) return;
  for (size_t i = 0; i < n; ++i) {
    std::uint64_t u;
    std::memcpy(&u, buf + i, 8);
    u = bswap64(u);
    std::memcpy(buf + i, &u, 8);
  }
}

}  // namespace

void write_hxf(const std::string& path, const FormField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("hxf: cannot open '" + path + "' for writing");
  os << "HXF1 " << f.degree;
  for (int a = 0; a < 6; ++a) os << ' ' << f.grid.n[a];
  os << '\n';
  const long long np = f.npts();
  const int nc = f.ncomp();
  std::vector<double> row(nc);
  for (long long p = 0; p < np; ++p) {
    for (int c = 0; c < nc; ++c) row[c] = f.comp(c)[p];
    to_le(row.data(), row.size());
    os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(nc) * 8);
  }
  if (!os) throw std::runtime_error("hxf: short write to '" + path + "'");
}

FormField read_hxf(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("hxf: cannot open '" + path + "'");
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("hxf: missing header in '" + path + "'");
  std::istringstream hs(header);
  std::string magic;
  int k = -1;
  Grid g;
  hs >> magic >> k;
  for (int a = 0; a < 6; ++a) hs >> g.n[a];
  if (!hs || magic != "HXF1") throw std::runtime_error("hxf: bad header in '" + path + "'");
  if (k < 0 || k > 6) throw std::runtime_error("hxf: degree out of range in '" + path + "'");
  for (int a = 0; a < 6; ++a)
    if (g.n[a] < 1) throw std::runtime_error("hxf: bad grid size in '" + path + "'");
  FormField f(g, k);
  const long long np = f.npts();
  const int nc = f.ncomp();
  std::vector<double> row(nc);
  for (long long p = 0; p < np; ++p) {
    is.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(nc) * 8);
    if (!is) throw std::runtime_error("hxf: truncated data in '" + path + "'");
    to_le(row.data(), row.size());
    for (int c = 0; c < nc; ++c) f.comp(c)[p] = row[c];
  }
  char extra;
  if (is.read(&extra, 1)) throw std::runtime_error("hxf: trailing bytes in '" + path + "'");
  return f;
}

}  // namespace sympcy
