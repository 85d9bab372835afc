#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "qedbounds/fock.hpp"
#include "qedbounds/quad_solver.hpp"

using namespace qb;

namespace {

ModeLattice make(double lam, double L = 2 * kPi) {
  PhysParams p;
  p.alpha = 1.0;
  p.lambda_uv = lam;
  p.box_side = L;
  return ModeLattice(p);
}

// Dense reference: (1/2) sum_j (p_j + sqrt(alpha) A_j)^2 + H_f on the basis
// with both caps raised by one, compressed to the requested basis.
Eigen::MatrixXd reference_hamiltonian(const ModeLattice& lat, int cap, double alpha) {
  auto big = enumerate_basis(lat, cap + 1, cap + 1);
  auto small = enumerate_basis(lat, cap, cap);
  const auto nb = static_cast<Eigen::Index>(big.dim());
  const auto spec = field_operator_spec(lat);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nb, nb);
  for (int j = 0; j < 3; ++j) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(nb, nb);
    for (Eigen::Index s = 0; s < nb; ++s) x(s, s) = big.electron_momentum(std::size_t(s))[j];
    for (std::size_t p = 0; p < lat.pair_count(); ++p) {
      const double c = std::sqrt(alpha) * spec.a_coeff[p][j];
      if (c == 0.0) continue;
      x += c * (ladder_matrix(big, p, false) + ladder_matrix(big, p, true));
    }
    h += 0.5 * x * x;
  }
  for (Eigen::Index s = 0; s < nb; ++s) {
    const auto* occ = big.state(std::size_t(s));
    for (int p = 0; p < big.num_pairs(); ++p) h(s, s) += lat.pair_norm_k(std::size_t(p)) * occ[p];
  }
  const auto ns = static_cast<Eigen::Index>(small.dim());
  Eigen::MatrixXd out(ns, ns);
  std::vector<Eigen::Index> map(ns);
  for (Eigen::Index i = 0; i < ns; ++i) map[i] = Eigen::Index(big.rank(small.state(std::size_t(i))));
  for (Eigen::Index i = 0; i < ns; ++i)
    for (Eigen::Index k = 0; k < ns; ++k) out(i, k) = h(map[i], map[k]);
  return out;
}

}  // namespace

TEST_CASE("basis dimensions and graded order") {
  CHECK(projected_dimension(1, 3, 3) == 4);
  CHECK(projected_dimension(2, 2, 2) == 6);
  CHECK(projected_dimension(7, 3, 0) == 1);
  CHECK(projected_dimension(36, 2, 2) == 703);
  CHECK(projected_dimension(36, 3, 3) == 9139);

  const auto lat = make(1.1);  // 6 modes
  REQUIRE(lat.mode_count() == 6);
  const auto b = enumerate_basis(lat, 2, 3);
  std::set<std::vector<int>> seen;
  int last_t = 0;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    CHECK(b.rank(b.state(i)) == i);
    const int t = b.photon_number(i);
    CHECK(t >= last_t);
    CHECK(t <= 3);
    last_t = t;
    std::vector<int> v(b.state(i), b.state(i) + b.num_pairs());
    for (int x : v) CHECK(x <= 2);
    seen.insert(v);
  }
  CHECK(seen.size() == b.dim());
  // larger leading occupations first inside a grade
  CHECK(int(b.state(1)[0]) == 1);
  CHECK(int(b.state(2)[1]) == 1);
}

TEST_CASE("capacity limit") {
  const auto lat = make(3.0);
  try {
    enumerate_basis(lat, 6, 6);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Capacity);
  }
}

TEST_CASE("free Hamiltonian is diagonal") {
  const auto lat = make(1.1);
  const auto b = enumerate_basis(lat, 2, 2, {0.3, -0.2, 0.1});
  const auto h = assemble_hamiltonian(b, 0.0, {}).dense();
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    const auto p = b.electron_momentum(std::size_t(i));
    double e = 0.5 * dot(p, p);
    for (int q = 0; q < b.num_pairs(); ++q) e += lat.pair_norm_k(std::size_t(q)) * b.state(std::size_t(i))[q];
    CHECK(h(i, i) == doctest::Approx(e).epsilon(1e-14));
    for (Eigen::Index k = 0; k < h.cols(); ++k)
      if (k != i) CHECK(h(i, k) == 0.0);
  }
  const auto g = ground_energy(assemble_hamiltonian(enumerate_basis(lat, 2, 2), 0.0, {}), 1e-12);
  CHECK(std::abs(g.E0) < 1e-14);
  CHECK(g.residual <= 1e-12);
}

TEST_CASE("minimal coupling matches a dense reference") {
  const auto lat = make(1.1);
  for (double alpha : {0.3, 2.0}) {
    const auto b = enumerate_basis(lat, 2, 2);
    const auto h = assemble_hamiltonian(b, alpha, {}).dense();
    const auto ref = reference_hamiltonian(lat, 2, alpha);
    CHECK((h - ref).norm() <= 1e-12 * ref.norm());
    // photon-number selection rule
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index k = 0; k < h.cols(); ++k)
        if (std::abs(b.photon_number(std::size_t(i)) - b.photon_number(std::size_t(k))) > 2)
          CHECK(h(i, k) == 0.0);
  }
}

TEST_CASE("density coupling reduces to closed forms") {
  const auto lat = make(1.5);  // 36 pairs
  const double alpha = 1.0;
  ModelSpec u{CouplingModel::DensityCoupled, DensityTable::uniform(lat)};
  const auto e3 = ground_energy(assemble_hamiltonian(enumerate_basis(lat, 3, 3), alpha, u), 1e-11).E0;
  const double closed = a2_uniform_energy(lat, alpha).total;
  CHECK(std::abs(e3 / closed - 1) < 1e-7);

  // point density is the A^2-only model
  const auto small = make(1.1);
  const auto b = enumerate_basis(small, 2, 2);
  ModelSpec pt{CouplingModel::DensityCoupled, DensityTable::point(small)};
  ModelSpec a2{CouplingModel::A2Only, {}};
  const auto hp = assemble_hamiltonian(b, alpha, pt).dense();
  const auto ha = assemble_hamiltonian(b, alpha, a2).dense();
  CHECK((hp - ha).norm() <= 1e-12 * ha.norm());
}

TEST_CASE("Lanczos agrees with dense diagonalization") {
  const auto lat = make(1.5);
  const auto b = enumerate_basis(lat, 2, 2);
  const auto h = assemble_hamiltonian(b, 1.0, {});
  EigenOptions dense_opts;
  EigenOptions lanczos_opts;
  lanczos_opts.dense_threshold = 10;
  const auto d = ground_energy(h, 1e-11, dense_opts);
  const auto l = ground_energy(h, 1e-11, lanczos_opts);
  CHECK(d.dense);
  CHECK_FALSE(l.dense);
  CHECK(l.E0 == doctest::Approx(d.E0).epsilon(1e-11));
  CHECK(l.residual <= 1e-11 * std::max(1.0, std::abs(l.E0)));
  // fixed seed: repeated runs agree bit for bit
  CHECK(ground_energy(h, 1e-11, lanczos_opts).E0 == l.E0);
}

TEST_CASE("convergence study is monotone") {
  const auto lat = make(1.5);
  const auto tr = convergence_study(lat, 1.0, {}, {1, 2, 3});
  REQUIRE(tr.entries.size() == 3);
  for (std::size_t i = 1; i < tr.entries.size(); ++i)
    CHECK(tr.entries[i].E0 <= tr.entries[i - 1].E0 + 1e-12);
  const auto z = convergence_study(lat, 0.0, {}, {1, 2});
  for (const auto& e : z.entries) CHECK(std::abs(e.E0) < 1e-14);
  CHECK_THROWS_AS(convergence_study(lat, 1.0, {}, {2, 2}), Error);
}

TEST_CASE("first-order slope") {
  const auto lat = make(1.5);
  const auto pt = pt_slope_check(lat, {1e-5, 2e-5, 5e-4, 1e-3}, 2);
  CHECK(pt.reference == 0.5 * vacuum_A2(lat));
  CHECK(pt.ratio >= 0.99);
  CHECK(pt.ratio <= 1.01);
  CHECK(pt.order >= 1.8);
  CHECK_THROWS_AS(pt_slope_check(lat, {1e-3, 1e-2}), Error);
}
