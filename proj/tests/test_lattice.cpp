#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qedbounds/lattice.hpp"

using namespace qb;

namespace {

ModeLattice make(double lam, double L) {
  PhysParams p;
  p.alpha = 1.0;
  p.lambda_uv = lam;
  p.box_side = L;
  return ModeLattice(p);
}

// Brute-force count of integer vectors with 0 < |2 pi n / L| < lam.
std::size_t brute_count(double lam, double L) {
  std::size_t c = 0;
  const int r = static_cast<int>(lam * L / (2 * kPi)) + 2;
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b)
      for (int d = -r; d <= r; ++d) {
        const double k2 = (a * a + b * b + d * d) * std::pow(2 * kPi / L, 2);
        if (k2 > 0 && k2 < lam * lam) ++c;
      }
  return c;
}

}  // namespace

TEST_CASE("mode counts") {
  CHECK(make(1.5, 2 * kPi).mode_count() == 18);
  CHECK(make(1.5, 2 * kPi).pair_count() == 36);
  CHECK(make(0.5, 2 * kPi).empty());
  CHECK(make(2.1, kPi).mode_count() == 6);
  for (double lam : {2.3, 3.7, 5.01})
    for (double L : {2 * kPi, 3.0, 7.5}) CHECK(make(lam, L).mode_count() == brute_count(lam, L));
}

TEST_CASE("cutoff is strict") {
  // |n| = 1 sits exactly on Lambda = 1 for L = 2 pi
  CHECK(make(1.0, 2 * kPi).mode_count() == 0);
}

TEST_CASE("lexicographic order and lookup") {
  const auto lat = make(3.2, 2 * kPi);
  for (std::size_t i = 1; i < lat.mode_count(); ++i) CHECK(lat.mode(i - 1).n < lat.mode(i).n);
  for (std::size_t i = 0; i < lat.mode_count(); ++i) CHECK(lat.find(lat.mode(i).n).value() == i);
  CHECK_FALSE(lat.find({0, 0, 0}).has_value());
  CHECK_FALSE(lat.find({9, 0, 0}).has_value());
  CHECK(ModeLattice::pair_index(3, 1) == 7);
  CHECK(ModeLattice::pair_of(7).first == 3);
}

TEST_CASE("polarization frames") {
  auto p = polarization({0, 0, 3});
  CHECK(p.eps1 == Vec3{1, 0, 0});
  CHECK(p.eps2 == Vec3{0, 1, 0});
  p = polarization({1, 0, 0});
  CHECK(p.eps1[1] == doctest::Approx(-1.0));
  CHECK(p.eps2[2] == doctest::Approx(-1.0));
  const auto lat = make(4.1, 2 * kPi);
  for (std::size_t i = 0; i < lat.mode_count(); ++i) {
    const auto& k = lat.mode(i).k;
    const auto& e = lat.pols()[i];
    CHECK(std::abs(dot(e.eps1, k)) < 1e-12);
    CHECK(std::abs(dot(e.eps2, k)) < 1e-12);
    CHECK(std::abs(dot(e.eps1, e.eps2)) < 1e-12);
    CHECK(norm(e.eps1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm(e.eps2) == doctest::Approx(1.0).epsilon(1e-14));
    // right-handed: eps1 x eps2 = k / |k|
    const auto c = cross(e.eps1, e.eps2);
    for (int j = 0; j < 3; ++j) CHECK(c[j] == doctest::Approx(k[j] / norm(k)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(polarization({0, 0, 0}), Error);
}

TEST_CASE("vacuum A^2 small cases") {
  CHECK(vacuum_A2(make(0.5, 2 * kPi)) == 0.0);
  CHECK(vacuum_A2(make(2.1, kPi)) == doctest::Approx(6.0 / (2 * std::pow(kPi, 3))).epsilon(1e-14));
}

TEST_CASE("transverse sum small case and symmetry") {
  const auto t = transverse_sum(make(2.1, kPi));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(t[i][j] == doctest::Approx(i == j ? 4.0 / std::pow(kPi, 3) : 0.0).epsilon(1e-14));
  const auto t2 = transverse_sum(make(5.3, 2 * kPi));
  CHECK(std::abs(t2[0][1]) < 1e-14);
  CHECK(std::abs(t2[1][2]) < 1e-14);
}

TEST_CASE("continuum constants at Lambda L / 2 pi = 8") {
  const double lam = 8.0;
  const auto lat = make(lam, 2 * kPi);
  const auto t = transverse_sum(lat);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(t[i][i] / (lam * lam * lam / (9 * kPi * kPi)) - 1) < 0.02);
  CHECK(std::abs(vacuum_A2(lat) / (lam * lam / (4 * kPi * kPi)) - 1) < 0.02);
  const auto s = mode_weighted_sums(lat);
  for (int j = 0; j < 3; ++j) CHECK(s.S_perp[j] == doctest::Approx(t[j][j]).epsilon(1e-13));
  CHECK(s.S_inv == doctest::Approx(vacuum_A2(lat)).epsilon(1e-13));
}

TEST_CASE("empty lattice sums") {
  const auto s = mode_weighted_sums(make(0.5, 2 * kPi));
  CHECK(s.S_inv == 0.0);
  CHECK(s.S_k == 0.0);
  CHECK(s.S_perp == Vec3{0, 0, 0});
}

TEST_CASE("field operator coefficients") {
  const auto lat = make(2.1, kPi);
  const auto f = field_operator_spec(lat);
  // <0|A(0)^2|0> = sum_p |a_p|^2
  double s = 0.0;
  for (const auto& a : f.a_coeff) s += dot(a, a);
  CHECK(s == doctest::Approx(vacuum_A2(lat)).epsilon(1e-14));
}

TEST_CASE("invalid parameters") {
  PhysParams p;
  p.lambda_uv = -1;
  CHECK_THROWS_AS(ModeLattice{p}, Error);
  p.lambda_uv = 1;
  p.alpha = -0.1;
  CHECK_THROWS_AS(ModeLattice{p}, Error);
  p.alpha = 1;
  p.box_side = std::nan("");
  CHECK_THROWS_AS(ModeLattice{p}, Error);
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);
}
