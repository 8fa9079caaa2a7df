// Pointwise exterior algebra against the independent rational oracle and
// against pinned exact constants.
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sympcy/exterior.hpp"
#include "sympcy/frame.hpp"
#include "sympcy/multiindex.hpp"

using namespace sympcy;

namespace {

// Random integer-coefficient k-form (exact in doubles) mirrored into both
// representations.
std::pair<KForm, tor::CForm> random_pair(std::mt19937_64& eng, int k) {
  KForm f(k);
  tor::CForm g;
  const auto& T = Tables::get();
  for (int i = 0; i < kDim[k]; ++i) {
    const int coef = static_cast<int>(eng() % 21) - 10;
    f.c[i] = coef;
    if (coef != 0) g[T.mask_of[k][i]] = tor::Q(coef);
  }
  return {f, g};
}

bool matches(const KForm& f, const tor::CForm& g) {
  const auto& T = Tables::get();
  for (int i = 0; i < kDim[f.degree]; ++i) {
    const double want = tor::c_coeff(g, T.mask_of[f.degree][i]).value();
    if (f.c[i] != want) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("merge signs match brute-force inversion counting") {
  const auto& T = Tables::get();
  for (unsigned a = 0; a < 64; ++a)
    for (unsigned b = 0; b < 64; ++b)
      CHECK(static_cast<int>(T.merge_sign[a][b]) == tor::merge_sign(a, b));
}

TEST_CASE("wedge agrees with the oracle exactly on random integer forms") {
  std::mt19937_64 eng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const int ka = static_cast<int>(eng() % 4);
    const int kb = static_cast<int>(eng() % (7 - ka));
    auto [fa, ga] = random_pair(eng, ka);
    auto [fb, gb] = random_pair(eng, kb);
    CHECK(matches(wedge(fa, fb), tor::c_wedge(ga, gb)));
  }
}

TEST_CASE("interior product agrees with the oracle exactly") {
  std::mt19937_64 eng(12);
  for (int rep = 0; rep < 200; ++rep) {
    const int k = 1 + static_cast<int>(eng() % 6);
    auto [f, g] = random_pair(eng, k);
    const int axis = static_cast<int>(eng() % 6);
    CHECK(matches(interior_axis(axis, f), tor::c_interior(axis, g)));
  }
}

TEST_CASE("standard forms and their pinned wedge identities") {
  CHECK(matches(rho0(), tor::rho0()));
  CHECK(matches(sigma0(), tor::sigma0()));
  CHECK(matches(omega_std(), tor::omega()));
  CHECK(matches(vol_std(), tor::vol()));

  // omega^3 = 6 vol, rho0 ^ sigma0 = 4 vol, omega ^ rho0 = 0 (primitivity)
  const KForm w3 = wedge(wedge(omega_std(), omega_std()), omega_std());
  CHECK((w3 - 6.0 * vol_std()).maxnorm() == 0.0);
  CHECK((wedge(rho0(), sigma0()) - 4.0 * vol_std()).maxnorm() == 0.0);
  CHECK(wedge(omega_std(), rho0()).maxnorm() == 0.0);
  CHECK(wedge(omega_std(), sigma0()).maxnorm() == 0.0);
}

TEST_CASE("star tables equal the oracle star on every basis form") {
  const SymplecticFrame fr = make_standard_frame();
  const auto& T = Tables::get();
  for (int k = 0; k <= 6; ++k) {
    for (int i = 0; i < kDim[k]; ++i) {
      KForm b(k);
      b.c[i] = 1.0;
      const KForm got = star_s(fr, b);
      tor::CForm ob;
      ob[T.mask_of[k][i]] = tor::Q(1);
      CHECK(matches(got, tor::c_star(ob)));
    }
  }
}

TEST_CASE("pinned star values") {
  const SymplecticFrame fr = make_standard_frame();
  CHECK((star_s(fr, KForm::basis({}, 1.0)) - vol_std()).maxnorm() == 0.0);
  const KForm w2_half = 0.5 * wedge(omega_std(), omega_std());
  CHECK((star_s(fr, omega_std()) - w2_half).maxnorm() == 0.0);
  CHECK((star_s(fr, w2_half) - omega_std()).maxnorm() == 0.0);
  CHECK((star_s(fr, vol_std()) - KForm::basis({}, 1.0)).maxnorm() == 0.0);
  // rho0 and sigma0 are anti-self-dual under the symplectic star
  CHECK((star_s(fr, rho0()) + rho0()).maxnorm() == 0.0);
  CHECK((star_s(fr, sigma0()) + sigma0()).maxnorm() == 0.0);
}

TEST_CASE("star is an involution on random forms (exact: integer tables)") {
  const SymplecticFrame fr = make_standard_frame();
  std::mt19937_64 eng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const int k = static_cast<int>(eng() % 7);
    auto [f, g] = random_pair(eng, k);
    (void)g;
    CHECK((star_s(fr, star_s(fr, f)) - f).maxnorm() == 0.0);
  }
}

TEST_CASE("defining pairing relation b ^ *a = G_k(b,a) vol") {
  const SymplecticFrame fr = make_standard_frame();
  const auto& T = Tables::get();
  for (int k = 0; k <= 6; ++k)
    for (int ib = 0; ib < kDim[k]; ++ib)
      for (int ia = 0; ia < kDim[k]; ++ia) {
        KForm a(k), b(k);
        a.c[ia] = 1.0;
        b.c[ib] = 1.0;
        const KForm top = wedge(b, star_s(fr, a));
        const double lhs = top.c[0];  // coefficient of vol
        const double g = gk_pairing(fr, k, ib, ia);
        CHECK(lhs == g);
        CHECK(g == tor::gk(T.mask_of[k][ib], T.mask_of[k][ia]).value());
      }
}

TEST_CASE("interior is an antiderivation (exact on integer forms)") {
  std::mt19937_64 eng(14);
  for (int rep = 0; rep < 100; ++rep) {
    const int ka = 1 + static_cast<int>(eng() % 3);
    const int kb = 1 + static_cast<int>(eng() % (5 - ka));
    auto [fa, ga] = random_pair(eng, ka);
    auto [fb, gb] = random_pair(eng, kb);
    (void)ga;
    (void)gb;
    const int axis = static_cast<int>(eng() % 6);
    const KForm lhs = interior_axis(axis, wedge(fa, fb));
    KForm rhs = wedge(interior_axis(axis, fa), fb);
    const double sgn = (ka % 2 == 0) ? 1.0 : -1.0;
    rhs += sgn * wedge(fa, interior_axis(axis, fb));
    CHECK((lhs - rhs).maxnorm() == 0.0);
    // iota_v iota_v = 0
    if (ka >= 2) CHECK(interior_axis(axis, interior_axis(axis, fa)).maxnorm() == 0.0);
  }
}

TEST_CASE("injected star sign error is detected by the pairing relation") {
  const SymplecticFrame bad = make_standard_frame(true);
  const SymplecticFrame good = make_standard_frame();
  double worst = 0;
  for (int k = 0; k <= 6; ++k)
    for (int i = 0; i < kDim[k]; ++i) {
      KForm b(k);
      b.c[i] = 1.0;
      worst = std::max(worst, (star_s(bad, b) - star_s(good, b)).maxnorm());
    }
  CHECK(worst > 0.5);
}
