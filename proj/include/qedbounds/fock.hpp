#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qedbounds/lattice.hpp"

namespace qb {

inline constexpr std::size_t kDefaultBasisLimit = 2'000'000;

// Counts and ranks occupation vectors with per-pair and total caps in graded
// order: by total photon number, then lexicographically with larger leading
// occupations first.
class StateRanker {
 public:
  StateRanker(int num_pairs, int cap_per_pair, int cap_total);
  std::size_t dimension() const { return dim_; }
  std::size_t grade_offset(int t) const { return offsets_[t]; }
  std::size_t count(int pos, int remaining) const;
  std::size_t rank(const std::uint8_t* v) const;
  int num_pairs() const { return p_; }
  int cap_per_pair() const { return c_; }
  int cap_total() const { return t_; }

 private:
  int p_, c_, t_;
  std::vector<std::size_t> table_;  // (p_+1) x (t_+1)
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
};

std::size_t projected_dimension(int num_pairs, int cap_per_pair, int cap_total);

class OccupationBasis {
 public:
  OccupationBasis(const ModeLattice& lattice, int cap_per_pair, int cap_total,
                  const Vec3& total_momentum, std::size_t limit);

  const ModeLattice& lattice() const { return *lattice_; }
  int cap_per_pair() const { return ranker_.cap_per_pair(); }
  int cap_total() const { return ranker_.cap_total(); }
  const Vec3& total_momentum() const { return total_momentum_; }
  std::size_t dim() const { return ranker_.dimension(); }
  int num_pairs() const { return ranker_.num_pairs(); }
  const std::uint8_t* state(std::size_t i) const { return occ_.data() + i * std::size_t(num_pairs()); }
  int photon_number(std::size_t i) const;
  Vec3 electron_momentum(std::size_t i) const;
  std::size_t rank(const std::uint8_t* v) const { return ranker_.rank(v); }
  const StateRanker& ranker() const { return ranker_; }

 private:
  const ModeLattice* lattice_;
  StateRanker ranker_;
  Vec3 total_momentum_;
  std::vector<std::uint8_t> occ_;
};

OccupationBasis enumerate_basis(const ModeLattice& lattice, int cap_per_pair, int cap_total,
                                const Vec3& total_momentum = {0, 0, 0},
                                std::size_t limit = kDefaultBasisLimit);

enum class CouplingModel { MinimalCoupling, A2Only, DensityCoupled };
const char* to_string(CouplingModel m);

// Fixed classical electron density rho(x) = sum_q rhohat(q) exp(i q x) on the
// dual grid; rhohat must be real and even.
struct DensityTable {
  std::vector<IVec3> q;
  std::vector<double> rho_hat;
  static DensityTable uniform(const ModeLattice& lattice);
  // rhohat = 1/V on every difference and sum of lattice momenta: rho = delta.
  static DensityTable point(const ModeLattice& lattice);
};

struct ModelSpec {
  CouplingModel kind = CouplingModel::MinimalCoupling;
  DensityTable density;  // used by DensityCoupled only
};

// H on one total-momentum fiber. Off-diagonal one-photon terms are stored
// explicitly; the point-coupling A^2 term is kept as (alpha/2) sum_j R_j^T R_j
// where R_j maps into the basis with both caps raised by one.
class SectorHamiltonian {
 public:
  SectorHamiltonian(const OccupationBasis& basis, double alpha, const ModelSpec& model);

  const OccupationBasis& basis() const { return *basis_; }
  CouplingModel model() const { return model_; }
  double alpha() const { return alpha_; }
  std::size_t dim() const { return basis_->dim(); }
  std::size_t nnz_explicit() const { return col_.size(); }

  void apply(const double* x, double* y) const;
  Eigen::MatrixXd dense() const;
  const std::vector<double>& diagonal() const { return diag_; }

 private:
  const OccupationBasis* basis_;
  CouplingModel model_;
  double alpha_;
  std::vector<double> diag_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_;
  std::vector<double> val_;
  bool factored_ = false;
  std::size_t big_dim_ = 0;
  std::vector<std::size_t> f_ptr_;
  std::vector<std::uint32_t> f_target_;
  std::vector<std::uint32_t> f_pair_;
  std::vector<double> f_amp_;
  std::vector<Vec3> pair_eps_;
};

SectorHamiltonian assemble_hamiltonian(const OccupationBasis& basis, double alpha,
                                       const ModelSpec& model);

// Sparse ladder operator a_p (or a_p^* when `creation`) restricted to the basis.
Eigen::MatrixXd ladder_matrix(const OccupationBasis& basis, std::size_t pair, bool creation);

struct GroundState {
  double E0 = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool dense = false;
  Eigen::VectorXd vector;
};

struct EigenOptions {
  int max_restarts = 60;
  int krylov_dim = 80;
  std::uint64_t seed = 20240601ULL;
  std::size_t dense_threshold = 2000;
};

GroundState ground_energy(const SectorHamiltonian& h, double tol,
                          const EigenOptions& opts = {});

struct ConvergenceEntry {
  int cap = 0;
  std::size_t dim = 0;
  double E0 = 0.0;
  double residual = 0.0;
};
struct ConvergenceTrace {
  std::vector<ConvergenceEntry> entries;
  bool converged = false;
};

// caps are applied as both the per-pair and the total cap.
ConvergenceTrace convergence_study(const ModeLattice& lattice, double alpha,
                                   const ModelSpec& model, const std::vector<int>& caps,
                                   double tol = 1e-10);

struct PtSlope {
  double slope = 0.0;
  double reference = 0.0;
  double ratio = 0.0;
  double order = 0.0;
  std::vector<double> alphas;
  std::vector<double> energies;
};

PtSlope pt_slope_check(const ModeLattice& lattice, const std::vector<double>& alphas,
                       int cap = 2);

}  // namespace qb
