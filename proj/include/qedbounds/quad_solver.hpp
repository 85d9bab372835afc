#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qedbounds/lattice.hpp"
#include "qedbounds/records.hpp"

namespace qb {

// Real, even electron profile on the dual grid q = 2 pi m / L of the photon
// box: phi(x) = V^{-1/2} sum_q c_q exp(i q x), sum c_q^2 = 1.
struct TrialProfile {
  double K = 0.0;  // 0 marks the constant profile
  double box_side = 0.0;
  std::vector<IVec3> m;
  std::vector<double> coeff;
  double norm_const = 1.0;  // multiplier applied to (1 - |q|/K)^3

  double grad_term() const;  // (1/2) sum |q|^2 c_q^2
  int max_abs_m() const;
};

// Coefficients proportional to (1 - |q|/K)^3 for |q| < K. Degenerate error when
// the only grid point inside is q = 0.
TrialProfile trial_profile(double K, const ModeLattice& lattice);
// phi = V^{-1/2}.
TrialProfile uniform_profile(const ModeLattice& lattice);

// Diagonal block of M in one reflection-parity sector.
struct SymmetryBlock {
  int irrep = 0;  // bit i set: odd under x_i -> -x_i
  int dim = 0;
  std::vector<double> a;  // row-major, symmetric
};

// M[(k,l),(k',l')] = |k|^2 delta + alpha (eps.eps') ghat(k - k') with
// ghat = (c * c) / V. Entries are generated on demand from the kernel table.
class QuadraticForm {
 public:
  QuadraticForm(const ModeLattice& lattice, double alpha, std::vector<double> ghat,
                int half_width);

  std::size_t dim() const { return lattice_->pair_count(); }
  double alpha() const { return alpha_; }
  const ModeLattice& lattice() const { return *lattice_; }
  double ghat(const IVec3& p) const;
  double entry(std::size_t i, std::size_t j) const;
  double trace() const;
  Eigen::MatrixXd dense() const;
  // Splits M by the eight axis-reflection parities.
  std::vector<SymmetryBlock> symmetry_blocks() const;

 private:
  const ModeLattice* lattice_;
  double alpha_;
  std::vector<double> ghat_;
  int half_;  // ghat_ covers |p_i| <= half_
};

QuadraticForm assemble_dressing_matrix(const ModeLattice& lattice, double alpha,
                                       const TrialProfile& profile);

enum class EigenRoute { SymmetryBlocks, Dense };

// Eigenvalues of M, ascending. Checks trace and positivity.
std::vector<double> form_eigenvalues(const QuadraticForm& form,
                                     EigenRoute route = EigenRoute::SymmetryBlocks);

// (1/2) sum sqrt(eig M) - (1/2) sum_{pairs} |k|.
double traceroot_gap(const QuadraticForm& form, const ModeLattice& lattice,
                     EigenRoute route = EigenRoute::SymmetryBlocks);

struct EnergyBreakdown {
  double grad_term = 0.0;
  double traceroot_term = 0.0;
  double total = 0.0;
};

EnergyBreakdown a2_variational_energy(const ModeLattice& lattice, double alpha, double K,
                                      EigenRoute route = EigenRoute::SymmetryBlocks);

// Constant profile with the dressed vacuum; closed form
// (1/2) sum_{pairs} (sqrt(|k|^2 + alpha/V) - |k|).
EnergyBreakdown a2_uniform_energy(const ModeLattice& lattice, double alpha);

struct OptimizeKResult {
  double K_star = 0.0;
  EnergyBreakdown energy;
  double K_lo = 0.0;
  double K_hi = 0.0;
  EnergyBreakdown energy_lo;
  EnergyBreakdown energy_hi;
  int evaluations = 0;
};

OptimizeKResult optimize_K(const ModeLattice& lattice, double alpha);

// Upper bound on the P = 0 ground energy valid for the A^2 and minimal
// coupling models on this lattice: min(optimize_K, constant profile).
struct AdaptedUpper {
  double value = 0.0;
  double K_star = 0.0;
  bool from_uniform = false;
};
AdaptedUpper lattice_adapted_upper_bound(const ModeLattice& lattice, double alpha);

// Continuum: (1/3 pi) sqrt(alpha/2) Lambda^{3/2} - (9/8) Lambda.
// Lattice: sqrt(alpha) Tr T / (2 sqrt(t_max)) - S_k / t_max, from
// H_f >= Pi^2/(2 t_max) - S_k/t_max with t_max the top eigenvalue of T.
BoundRecord commutator_lower_bound(double alpha, double lambda_uv,
                                   const ModeLattice* lattice = nullptr);

// Uncertainty-principle lower bound for the A^2 model, maximized over the
// smearing radius R (aux R_star).
BoundRecord a2_lower_bound(double alpha, double lambda_uv);

// The R-dependent objective of a2_lower_bound, exposed for tests.
double a2_lower_objective(double alpha, double lambda_uv, double R);

}  // namespace qb
