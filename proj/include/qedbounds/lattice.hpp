#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qedbounds/common.hpp"

namespace qb {

// Physical parameters in units hbar = c = m = 1.
struct PhysParams {
  double alpha = 0.0;
  double lambda_uv = 1.0;
  double box_side = 2.0 * kPi;
  int n_particles = 1;

  void validate() const;
  double volume() const { return box_side * box_side * box_side; }
};

struct Mode {
  IVec3 n;
  Vec3 k;
  double norm_k;
};

struct PolarizationPair {
  Vec3 eps1;
  Vec3 eps2;
  const Vec3& operator[](int lambda) const { return lambda == 0 ? eps1 : eps2; }
};

// Right-handed transverse frame. Throws invalid-input for k = 0.
PolarizationPair polarization(const Vec3& k);

// Photon modes 0 < |2 pi n / L| < Lambda in lexicographic order of n.
// Pairs (mode, lambda) are numbered 2 * mode + lambda.
class ModeLattice {
 public:
  explicit ModeLattice(const PhysParams& params);

  const PhysParams& params() const { return params_; }
  double volume() const { return params_.volume(); }
  double box_side() const { return params_.box_side; }
  double lambda_uv() const { return params_.lambda_uv; }
  double dual_spacing() const { return 2.0 * kPi / params_.box_side; }

  std::size_t mode_count() const { return modes_.size(); }
  std::size_t pair_count() const { return 2 * modes_.size(); }
  bool empty() const { return modes_.empty(); }

  const std::vector<Mode>& modes() const { return modes_; }
  const Mode& mode(std::size_t i) const { return modes_[i]; }
  const std::vector<PolarizationPair>& pols() const { return pols_; }
  const Vec3& eps(std::size_t pair) const { return pols_[pair / 2][static_cast<int>(pair % 2)]; }
  double pair_norm_k(std::size_t pair) const { return modes_[pair / 2].norm_k; }

  static std::size_t pair_index(std::size_t mode, int lambda) {
    return 2 * mode + static_cast<std::size_t>(lambda);
  }
  static std::pair<std::size_t, int> pair_of(std::size_t pair) {
    return {pair / 2, static_cast<int>(pair % 2)};
  }

  // Mode index for integer vector n, if inside the cutoff.
  std::optional<std::size_t> find(const IVec3& n) const;
  int max_abs_n() const { return nmax_; }

 private:
  PhysParams params_;
  std::vector<Mode> modes_;
  std::vector<PolarizationPair> pols_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  int nmax_ = 0;
};

ModeLattice build_lattice(const PhysParams& params);

// Coefficients of a_lambda(k) in A(0) and of a_lambda(k) in i Pi(0) (real
// vectors), indexed by pair.
struct FieldOperatorSpec {
  std::vector<Vec3> a_coeff;
  std::vector<Vec3> pi_coeff;
};
FieldOperatorSpec field_operator_spec(const ModeLattice& lattice);

double vacuum_A2(const ModeLattice& lattice);

using Mat3 = std::array<std::array<double, 3>, 3>;
Mat3 transverse_sum(const ModeLattice& lattice);

struct ModeSums {
  double S_inv = 0.0;   // (1/2V) sum_{k,lambda} 1/|k|
  double S_k = 0.0;     // (1/V) sum_k |k|
  Vec3 S_perp{0, 0, 0}; // (1/V) sum_k (1 - k_j^2/|k|^2)
};
ModeSums mode_weighted_sums(const ModeLattice& lattice);

std::uint64_t pack_ivec(const IVec3& n);

}  // namespace qb
