#include "qedbounds/lattice.hpp"

#include <cmath>

namespace qb {

void PhysParams::validate() const {
  if (!finite(alpha) || !finite(lambda_uv) || !finite(box_side))
    fail(ErrorCode::InvalidInput, "physical parameters must be finite");
  if (alpha < 0.0) fail(ErrorCode::InvalidInput, "alpha must be >= 0");
  if (lambda_uv <= 0.0) fail(ErrorCode::InvalidInput, "lambda_uv must be > 0");
  if (box_side <= 0.0) fail(ErrorCode::InvalidInput, "box_side must be > 0");
  if (n_particles < 1) fail(ErrorCode::InvalidInput, "n_particles must be >= 1");
}

PolarizationPair polarization(const Vec3& k) {
  const double kn = norm(k);
  if (!(kn > 0.0) || !finite(kn))
    fail(ErrorCode::InvalidInput, "polarization needs a finite nonzero k");
  const Vec3 z{0.0, 0.0, 1.0};
  const Vec3 kxz = cross(k, z);
  const double m = norm(kxz);
  if (m > 1e-10 * kn) {
    Vec3 e1 = scale(kxz, 1.0 / m);
    Vec3 e2 = cross(scale(k, 1.0 / kn), e1);
    return {e1, e2};
  }
  // k along the z axis: keep the frame right-handed for either sign
  return {{1.0, 0.0, 0.0}, {0.0, k[2] > 0.0 ? 1.0 : -1.0, 0.0}};
}

std::uint64_t pack_ivec(const IVec3& n) {
  auto u = [](int v) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v + (1 << 20))) & 0x1FFFFF; };
  return (u(n[0]) << 42) | (u(n[1]) << 21) | u(n[2]);
}

ModeLattice::ModeLattice(const PhysParams& params) : params_(params) {
  params_.validate();
  const double dk = 2.0 * kPi / params_.box_side;
  const double lam2 = params_.lambda_uv * params_.lambda_uv;
  const double r = params_.lambda_uv / dk;
  if (r > 1e5) fail(ErrorCode::Capacity, "mode lattice too large");
  nmax_ = static_cast<int>(std::floor(r)) + 1;
  for (int a = -nmax_; a <= nmax_; ++a)
    for (int b = -nmax_; b <= nmax_; ++b)
      for (int c = -nmax_; c <= nmax_; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Vec3 k{dk * a, dk * b, dk * c};
        const double k2 = dot(k, k);
        if (!(k2 < lam2)) continue;
        index_.emplace(pack_ivec({a, b, c}), modes_.size());
        modes_.push_back({{a, b, c}, k, std::sqrt(k2)});
        pols_.push_back(polarization(k));
      }
}

std::optional<std::size_t> ModeLattice::find(const IVec3& n) const {
  auto it = index_.find(pack_ivec(n));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ModeLattice build_lattice(const PhysParams& params) { return ModeLattice(params); }

FieldOperatorSpec field_operator_spec(const ModeLattice& lattice) {
  FieldOperatorSpec spec;
  const double v = lattice.volume();
  spec.a_coeff.resize(lattice.pair_count());
  spec.pi_coeff.resize(lattice.pair_count());
  for (std::size_t p = 0; p < lattice.pair_count(); ++p) {
    const double kn = lattice.pair_norm_k(p);
    spec.a_coeff[p] = scale(lattice.eps(p), 1.0 / std::sqrt(2.0 * v * kn));
    spec.pi_coeff[p] = scale(lattice.eps(p), std::sqrt(kn / (2.0 * v)));
  }
  return spec;
}

double vacuum_A2(const ModeLattice& lattice) {
  CompensatedSum s;
  for (const auto& m : lattice.modes()) s.add(2.0 / m.norm_k);
  return s.value() / (2.0 * lattice.volume());
}

Mat3 transverse_sum(const ModeLattice& lattice) {
  std::array<std::array<CompensatedSum, 3>, 3> acc;
  for (const auto& m : lattice.modes()) {
    const double k2 = m.norm_k * m.norm_k;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        acc[i][j].add((i == j ? 1.0 : 0.0) - m.k[i] * m.k[j] / k2);
  }
  Mat3 t{};
  const double v = lattice.volume();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = acc[i][j].value() / v;
  return t;
}

ModeSums mode_weighted_sums(const ModeLattice& lattice) {
  CompensatedSum inv, sk;
  std::array<CompensatedSum, 3> perp;
  for (const auto& m : lattice.modes()) {
    inv.add(2.0 / m.norm_k);
    sk.add(m.norm_k);
    const double k2 = m.norm_k * m.norm_k;
    for (int j = 0; j < 3; ++j) perp[j].add(1.0 - m.k[j] * m.k[j] / k2);
  }
  const double v = lattice.volume();
  ModeSums out;
  out.S_inv = inv.value() / (2.0 * v);
  out.S_k = sk.value() / v;
  for (int j = 0; j < 3; ++j) out.S_perp[j] = perp[j].value() / v;
  return out;
}

}  // namespace qb
