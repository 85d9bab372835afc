#include <algorithm>
#include <random>

#include "qedbounds/fock.hpp"

namespace qb {

namespace {

double residual_norm(const SectorHamiltonian& h, const Eigen::VectorXd& v, double e) {
  Eigen::VectorXd hv(v.size());
  h.apply(v.data(), hv.data());
  return (hv - e * v).norm();
}

GroundState dense_ground(const SectorHamiltonian& h) {
  Eigen::MatrixXd m = h.dense();
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::Numerical, "dense eigensolver failed");
  GroundState g;
  g.E0 = es.eigenvalues()[0];
  g.vector = es.eigenvectors().col(0);
  g.residual = residual_norm(h, g.vector, g.E0);
  g.dense = true;
  g.iterations = 1;
  return g;
}

}  // namespace

GroundState ground_energy(const SectorHamiltonian& h, double tol, const EigenOptions& opts) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidInput, "tolerance must be > 0");
  const auto n = static_cast<Eigen::Index>(h.dim());
  if (n == 0) fail(ErrorCode::InvalidInput, "empty basis");
  if (std::size_t(n) < opts.dense_threshold) {
    GroundState g = dense_ground(h);
    if (g.residual > tol * std::max(1.0, std::abs(g.E0)))
      throw Error(ErrorCode::Numerical, "dense ground state residual above tolerance", g.residual);
    return g;
  }

  // Lanczos with full reorthogonalization and explicit restarts.
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> nd;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = nd(rng);
  x.normalize();
  const std::size_t budget_vectors = std::max<std::size_t>(
      12, std::min<std::size_t>(opts.krylov_dim, std::size_t(3.0e8 / (8.0 * double(n)))));
  const int m = static_cast<int>(std::min<std::size_t>(budget_vectors, std::size_t(n)));
  Eigen::MatrixXd Q(n, m);
  Eigen::VectorXd w(n);
  GroundState best;
  best.residual = std::numeric_limits<double>::infinity();
  int total_iter = 0;
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    std::vector<double> al, be;
    Q.col(0) = x;
    int k = 0;
    for (; k < m; ++k) {
      h.apply(Q.col(k).data(), w.data());
      ++total_iter;
      const double a = Q.col(k).dot(w);
      al.push_back(a);
      // two passes of classical Gram-Schmidt against the whole basis
      for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd c = Q.leftCols(k + 1).transpose() * w;
        w.noalias() -= Q.leftCols(k + 1) * c;
      }
      const double b = w.norm();
      if (k + 1 == m || b < 1e-13 * std::max(1.0, std::abs(a))) {
        ++k;
        break;
      }
      be.push_back(b);
      Q.col(k + 1) = w / b;
    }
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(al.data(), k);
    Eigen::VectorXd sub(std::max(0, k - 1));
    for (int i = 0; i + 1 < k; ++i) sub[i] = be[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = es.eigenvalues()[0];
    x = Q.leftCols(k) * es.eigenvectors().col(0);
    x.normalize();
    const double res = residual_norm(h, x, theta);
    if (res < best.residual) {
      best.E0 = theta;
      best.residual = res;
      best.vector = x;
    }
    best.iterations = total_iter;
    if (res <= tol * std::max(1.0, std::abs(theta))) return best;
  }
  throw Error(ErrorCode::Numerical,
              "Lanczos did not converge; best E0 " + std::to_string(best.E0), best.residual);
}

ConvergenceTrace convergence_study(const ModeLattice& lattice, double alpha,
                                   const ModelSpec& model, const std::vector<int>& caps,
                                   double tol) {
  if (caps.empty()) fail(ErrorCode::InvalidInput, "caps list is empty");
  for (std::size_t i = 1; i < caps.size(); ++i)
    if (caps[i] <= caps[i - 1]) fail(ErrorCode::InvalidInput, "caps must be strictly increasing");
  ConvergenceTrace tr;
  for (int c : caps) {
    auto basis = enumerate_basis(lattice, c, c);
    auto h = assemble_hamiltonian(basis, alpha, model);
    auto g = ground_energy(h, tol);
    tr.entries.push_back({c, basis.dim(), g.E0, g.residual});
  }
  if (tr.entries.size() >= 2) {
    const auto& a = tr.entries[tr.entries.size() - 2];
    const auto& b = tr.entries.back();
    tr.converged = std::abs(b.E0 - a.E0) <= 1e-8 * std::max(1.0, std::abs(b.E0));
  }
  return tr;
}

PtSlope pt_slope_check(const ModeLattice& lattice, const std::vector<double>& alphas, int cap) {
  if (alphas.size() < 2) fail(ErrorCode::InvalidInput, "need at least two couplings");
  std::vector<double> a = alphas;
  std::sort(a.begin(), a.end());
  if (a.front() <= 0.0) fail(ErrorCode::InvalidInput, "couplings must be > 0");
  if (a.back() > 1e-3) fail(ErrorCode::InvalidInput, "couplings must be <= 1e-3");
  PtSlope out;
  out.alphas = a;
  out.reference = 0.5 * vacuum_A2(lattice);
  auto basis = enumerate_basis(lattice, cap, cap);
  ModelSpec model{CouplingModel::MinimalCoupling, {}};
  for (double al : a) {
    auto h = assemble_hamiltonian(basis, al, model);
    out.energies.push_back(ground_energy(h, 1e-12).E0);
  }
  // E/alpha = s + c alpha + ...; eliminate c with the two smallest couplings
  const double s1 = out.energies[0] / a[0];
  const double s2 = out.energies[1] / a[1];
  out.slope = (a[1] * s1 - a[0] * s2) / (a[1] - a[0]);
  out.ratio = out.reference != 0.0 ? out.slope / out.reference : 0.0;
  const std::size_t i1 = a.size() - 2, i2 = a.size() - 1;
  const double d1 = std::abs(out.energies[i1] - a[i1] * out.reference);
  const double d2 = std::abs(out.energies[i2] - a[i2] * out.reference);
  out.order = (d1 > 0 && d2 > 0) ? std::log(d2 / d1) / std::log(a[i2] / a[i1]) : 0.0;
  return out;
}

}  // namespace qb
