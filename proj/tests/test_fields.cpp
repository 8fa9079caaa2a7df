// Form fields on the torus: spectral calculus invariants, the analytic
// backend, de-aliasing, and HXF1 serialization.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sympcy/calculus.hpp"
#include "sympcy/exterior.hpp"
#include "sympcy/hxf.hpp"
#include "sympcy/spectral.hpp"
#include "sympcy/util.hpp"

using namespace sympcy;

namespace {

Grid grid4() { return Grid({8, 8, 8, 8, 1, 1}); }

FormField random_bandlimited(std::mt19937_64& eng, const Grid& g, int k, int kmax = 2) {
  FormField f(g, k);
  for (int c = 0; c < f.ncomp(); ++c) {
    double* v = f.comp(c);
    for (long long p = 0; p < g.npts(); ++p) v[p] = uniform_pm1(eng);
    lowpass(g, v, kmax);
  }
  return f;
}

}  // namespace

TEST_CASE("spectral derivative of a single mode is exact to roundoff") {
  const Grid g({16, 1, 1, 1, 1, 1});
  FormField f(g, 0);
  for (long long p = 0; p < g.npts(); ++p) f.comp(0)[p] = std::cos(3.0 * g.point(p)[0]);
  std::vector<double> out(g.npts());
  spectral_derivative(g, f.comp(0), 0, out.data());
  double worst = 0;
  for (long long p = 0; p < g.npts(); ++p)
    worst = std::max(worst, std::fabs(out[p] + 3.0 * std::sin(3.0 * g.point(p)[0])));
  CHECK(worst <= 1e-13);
}

TEST_CASE("d^2 = 0 on random band-limited fields") {
  std::mt19937_64 eng(31);
  const Grid g = grid4();
  for (int k = 0; k <= 4; ++k) {
    const FormField f = random_bandlimited(eng, g, k);
    const FormField df = ext_d(f);
    const FormField ddf = ext_d(df);
    const double scale = std::max(1.0, df.maxnorm());
    CHECK(ddf.maxnorm() / scale <= 1e-12);
  }
}

TEST_CASE("(d^s)^2 = 0 on random band-limited fields") {
  std::mt19937_64 eng(32);
  const Grid g = grid4();
  const SymplecticFrame fr = make_standard_frame();
  for (int k = 2; k <= 6; ++k) {
    const FormField f = random_bandlimited(eng, g, k);
    const FormField dsf = d_s(fr, f);
    const double scale = std::max(1.0, dsf.maxnorm());
    CHECK(d_s(fr, dsf).maxnorm() / scale <= 1e-12);
  }
}

TEST_CASE("d d^s + d^s d = 0 on random band-limited fields") {
  std::mt19937_64 eng(33);
  const Grid g = grid4();
  const SymplecticFrame fr = make_standard_frame();
  for (int k = 1; k <= 5; ++k) {
    const FormField f = random_bandlimited(eng, g, k);
    const FormField anti = ext_d(d_s(fr, f)) + d_s(fr, ext_d(f));
    const double scale = std::max(1.0, f.maxnorm());
    CHECK(anti.maxnorm() / scale <= 1e-10);
  }
}

TEST_CASE("star on fields equals the pointwise star bitwise") {
  std::mt19937_64 eng(34);
  const Grid g({4, 4, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  for (int k = 0; k <= 6; ++k) {
    FormField f(g, k);
    for (int c = 0; c < f.ncomp(); ++c)
      for (long long p = 0; p < g.npts(); ++p) f.comp(c)[p] = uniform_pm1(eng);
    const FormField sf = star_f(fr, f);
    for (long long p = 0; p < g.npts(); ++p)
      CHECK((sf.at(p) - star_s(fr, f.at(p))).maxnorm() == 0.0);
    // involution, exact: integer star tables
    const FormField ssf = star_f(fr, sf);
    for (long long p = 0; p < g.npts(); ++p) CHECK((ssf.at(p) - f.at(p)).maxnorm() == 0.0);
  }
}

TEST_CASE("spectral and analytic d^s agree on sin(x1) sigma0") {
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const Poly sin1 = Poly::cosine(1.0, {1, 0, 0, 0, 0, 0}, -1.5707963267948966);
  AField a = a_mul_scalar(sin1, AField::constant_form(sigma0()));
  FormField fa = FormField::from_analytic(g, a);    // carries the symbolic description
  FormField fs = fa;
  fs.ana.reset();                                   // forces the spectral path
  const FormField da = d_s(fr, fa);
  const FormField ds = d_s(fr, fs);
  CHECK((da - ds).maxnorm() <= 1e-12);
  CHECK(da.ana.has_value());
  CHECK_FALSE(ds.ana.has_value());
}

TEST_CASE("d d^s of x1 x3 sigma0 is the pinned constant 3-form") {
  // Oracle value, exact rationals:
  tor::PPoly phi = tor::p_monomial(tor::Q(1), tor::Mono{1, 0, 1, 0, 0, 0});
  const tor::CForm want = tor::dds_times(phi, tor::sigma0());
  // = e126 - e346
  tor::CForm expect;
  expect[0b100011] = tor::Q(1);   // e126
  expect[0b101100] = tor::Q(-1);  // e346
  CHECK(tor::c_equal(want, expect));

  // Production analytic pipeline on a grid:
  const Grid g({4, 4, 4, 4, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const Poly x1x3 = Poly::monomial(1.0, {1, 0, 1, 0, 0, 0});
  AField a = a_mul_scalar(x1x3, AField::constant_form(sigma0()));
  const FormField got = ext_d(d_s(fr, FormField::from_analytic(g, a)));
  const KForm pinned = KForm::basis({1, 2, 6}) - KForm::basis({3, 4, 6});
  for (long long p = 0; p < g.npts(); ++p) CHECK((got.at(p) - pinned).maxnorm() == 0.0);
}

TEST_CASE("deformed pair stays closed") {
  std::mt19937_64 eng(35);
  const Grid g = grid4();
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const FormField phi = random_bandlimited(eng, g, 0);
  const auto [rt, st] = deform(phi, Om, fr, +1);
  CHECK(ext_d(rt).maxnorm() <= 1e-10 * std::max(1.0, rt.maxnorm()));
  CHECK(ext_d(st).maxnorm() <= 1e-10 * std::max(1.0, st.maxnorm()));
}

TEST_CASE("de-aliased wedge removes the aliased mode a plain product keeps") {
  const Grid g({8, 1, 1, 1, 1, 1});
  FormField f(g, 0);
  for (long long p = 0; p < g.npts(); ++p) f.comp(0)[p] = std::cos(3.0 * g.point(p)[0]);
  // cos(3x)^2 = 1/2 + cos(6x)/2; mode 6 exceeds the grid band and must vanish
  // after de-aliasing, while the plain pointwise product folds it onto mode 2.
  const FormField clean = wedge_dealiased(f, f);
  double worst = 0;
  for (long long p = 0; p < g.npts(); ++p)
    worst = std::max(worst, std::fabs(clean.comp(0)[p] - 0.5));
  CHECK(worst <= 1e-13);
  const FormField dirty = wedge_plain(f, f);
  double alias = 0;
  for (long long p = 0; p < g.npts(); ++p)
    alias = std::max(alias, std::fabs(dirty.comp(0)[p] - 0.5));
  CHECK(alias > 0.4);
}

TEST_CASE("HXF1 round trip is bitwise and rejects malformed files") {
  std::mt19937_64 eng(36);
  const Grid g({4, 2, 1, 1, 2, 1});
  FormField f(g, 2);
  for (int c = 0; c < f.ncomp(); ++c)
    for (long long p = 0; p < g.npts(); ++p) f.comp(c)[p] = uniform_pm1(eng);
  const auto dir = std::filesystem::temp_directory_path() / "sympcy_hxf_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "f.hxf").string();
  write_hxf(path, f);
  const FormField back = read_hxf(path);
  REQUIRE(back.degree == f.degree);
  REQUIRE(back.grid == f.grid);
  for (int c = 0; c < f.ncomp(); ++c)
    for (long long p = 0; p < g.npts(); ++p) CHECK(back.comp(c)[p] == f.comp(c)[p]);

  CHECK_THROWS_AS(read_hxf((dir / "missing.hxf").string()), std::runtime_error);
  {
    std::ofstream os(dir / "bad_magic.hxf", std::ios::binary);
    os << "NOPE 2 4 2 1 1 2 1\n";
  }
  CHECK_THROWS_AS(read_hxf((dir / "bad_magic.hxf").string()), std::runtime_error);
  {
    // valid header, truncated payload
    std::ifstream is(path, std::ios::binary);
    std::string all((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::ofstream os(dir / "truncated.hxf", std::ios::binary);
    os.write(all.data(), static_cast<std::streamsize>(all.size() - 8));
  }
  CHECK_THROWS_AS(read_hxf((dir / "truncated.hxf").string()), std::runtime_error);
}

TEST_CASE("FFT zero mode is the plain mean") {
  std::mt19937_64 eng(37);
  const Grid g({8, 4, 1, 1, 1, 1});
  FormField f(g, 0);
  for (long long p = 0; p < g.npts(); ++p) f.comp(0)[p] = uniform_pm1(eng);
  const auto coeffs = fft_coeffs(g, f.comp(0));
  CHECK(std::fabs(coeffs[0].real() - f.mean(0)) <= 1e-14);
  CHECK(std::fabs(coeffs[0].imag()) <= 1e-12);
}
