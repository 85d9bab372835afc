#pragma once

#include <cstdint>
#include <vector>

#include "qedbounds/common.hpp"

namespace qb {

// Plane-wave orbitals exp(i 2 pi n . x / L), grouped by spin channel. The
// state is the product of one Slater determinant per channel.
struct OrbitalSet {
  double box_side = 1.0;
  int q = 1;  // number of spin states
  std::vector<std::vector<IVec3>> channels;

  int n_particles() const;
  void validate() const;  // distinct momenta per channel, at most q channels
  Vec3 momentum(const IVec3& n) const;
};

// N particles spread round robin over q channels; each channel fills the
// lowest nonzero momenta by |n|, ties in lexicographic order.
OrbitalSet free_fermion_orbitals(int N, int q, double box_side);

using Configuration = std::vector<Vec3>;

// N_j = #{i != j : |x_i - x_j| < R}; minimum-image distance when box_side > 0.
std::vector<int> neighbor_counts(const Configuration& X, double R, double box_side = 0.0);

struct SampleStats {
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  double acceptance_rate = 0.0;
  double step_width = 0.0;
};

struct SampleRun {
  std::vector<Configuration> samples;  // one per sweep of N single-particle moves
  SampleStats stats;
};

// Metropolis chain on prod_c |det exp(i q_a . x_b)|^2. The step width adapts
// toward 0.3 acceptance during burn-in only and is frozen afterwards.
SampleRun sample_slater(const OrbitalSet& orbitals, std::size_t n_samples,
                        std::size_t burn_in, std::uint64_t seed);

enum class LtMode { Nonrel, Rel };

struct SampleParams {
  std::size_t n_samples = 10000;
  std::size_t burn_in = 1000;
  std::uint64_t seed = 1;
  int batches = 50;
};

struct LtResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double rhs_stderr = 0.0;
  double ratio = 0.0;
  double stderr_ratio = 0.0;
  bool infinite = false;  // rhs = 0
  SampleStats stats;
};

inline constexpr double kLtConstant = 0.00127;

LtResult lt_ratio(const OrbitalSet& orbitals, double R, LtMode mode,
                  const SampleParams& params = {}, double c = kLtConstant);
// Same, on an existing sample stream.
LtResult lt_ratio_from_samples(const OrbitalSet& orbitals, const SampleRun& run, double R,
                               LtMode mode, int batches = 50, double c = kLtConstant);

}  // namespace qb
