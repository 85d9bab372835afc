#include <algorithm>
#include <unordered_map>

#include "qedbounds/fock.hpp"

namespace qb {

namespace {

struct Term {
  std::uint32_t partner;
  double coeff;
};

void merge_row(std::vector<std::pair<std::uint32_t, double>>& row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (w > 0 && row[w - 1].first == row[i].first)
      row[w - 1].second += row[i].second;
    else
      row[w++] = row[i];
  }
  row.resize(w);
}

}  // namespace

SectorHamiltonian::SectorHamiltonian(const OccupationBasis& basis, double alpha,
                                     const ModelSpec& model)
    : basis_(&basis), model_(model.kind), alpha_(alpha) {
  if (!(alpha >= 0.0) || !finite(alpha)) fail(ErrorCode::InvalidInput, "alpha must be >= 0");
  const ModeLattice& lat = basis.lattice();
  const int P = basis.num_pairs();
  const std::size_t n = basis.dim();
  if (n > std::size_t(std::numeric_limits<std::uint32_t>::max()))
    fail(ErrorCode::Capacity, "basis too large for 32-bit indices");
  const int cap = basis.cap_per_pair();
  const int tot = basis.cap_total();
  const double V = lat.volume();

  std::vector<double> cm(P);
  pair_eps_.resize(P);
  for (int m = 0; m < P; ++m) {
    cm[m] = 1.0 / std::sqrt(2.0 * V * lat.pair_norm_k(m));
    pair_eps_[m] = lat.eps(m);
  }

  std::vector<Vec3> D(n);
  diag_.assign(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    D[s] = basis.electron_momentum(s);
    const auto* occ = basis.state(s);
    CompensatedSum hf;
    for (int m = 0; m < P; ++m)
      if (occ[m]) hf.add(lat.pair_norm_k(m) * occ[m]);
    diag_[s] = 0.5 * dot(D[s], D[s]) + hf.value();
  }

  const bool linear = model.kind == CouplingModel::MinimalCoupling && alpha > 0.0;
  const bool density = model.kind == CouplingModel::DensityCoupled && alpha > 0.0;

  // density-coupled quadratic terms, per ordered pair (m, m')
  std::vector<std::vector<Term>> same_sign(P), mixed(P);
  if (density) {
    if (model.density.q.size() != model.density.rho_hat.size())
      fail(ErrorCode::InvalidInput, "density table malformed");
    std::unordered_map<std::uint64_t, double> rho;
    for (std::size_t i = 0; i < model.density.q.size(); ++i)
      rho[pack_ivec(model.density.q[i])] += model.density.rho_hat[i];
    auto lookup = [&](const IVec3& q) {
      auto it = rho.find(pack_ivec(q));
      return it == rho.end() ? 0.0 : it->second;
    };
    for (int m = 0; m < P; ++m) {
      const auto& nm = lat.mode(std::size_t(m) / 2).n;
      for (int m2 = 0; m2 < P; ++m2) {
        const auto& n2 = lat.mode(std::size_t(m2) / 2).n;
        const double ee = dot(pair_eps_[m], pair_eps_[m2]);
        if (ee == 0.0) continue;
        const double base = 0.5 * alpha * V * cm[m] * cm[m2] * ee;
        const double rs = lookup({nm[0] + n2[0], nm[1] + n2[1], nm[2] + n2[2]});
        const double rd = lookup({nm[0] - n2[0], nm[1] - n2[1], nm[2] - n2[2]});
        if (rs != 0.0) same_sign[m].push_back({std::uint32_t(m2), base * rs});
        if (rd != 0.0) mixed[m].push_back({std::uint32_t(m2), base * rd});
      }
    }
  }

  row_ptr_.assign(n + 1, 0);
  if (linear || density) {
    std::vector<std::uint8_t> v(P);
    std::vector<std::pair<std::uint32_t, double>> row;
    const double sa = std::sqrt(alpha);
    auto in_basis = [&](const std::vector<std::uint8_t>& w) {
      int t = 0;
      for (int m = 0; m < P; ++m) {
        if (w[m] > cap) return false;
        t += w[m];
      }
      return t <= tot;
    };
    for (std::size_t s = 0; s < n; ++s) {
      row.clear();
      const auto* occ = basis.state(s);
      const int ts = basis.photon_number(s);
      if (linear) {
        std::copy(occ, occ + P, v.begin());
        for (int m = 0; m < P; ++m) {
          const int nm = occ[m];
          if (nm > 0) {
            v[m] = std::uint8_t(nm - 1);
            const std::size_t t = basis.rank(v.data());
            v[m] = std::uint8_t(nm);
            const double val = sa * cm[m] * std::sqrt(double(nm)) * dot(pair_eps_[m], D[t]);
            if (val != 0.0) row.push_back({std::uint32_t(t), val});
          }
          if (nm < cap && ts < tot) {
            const double val = sa * cm[m] * std::sqrt(double(nm + 1)) * dot(pair_eps_[m], D[s]);
            if (val != 0.0) {
              v[m] = std::uint8_t(nm + 1);
              row.push_back({std::uint32_t(basis.rank(v.data())), val});
              v[m] = std::uint8_t(nm);
            }
          }
        }
      }
      if (density) {
        for (int m = 0; m < P; ++m) {
          for (const auto& term : same_sign[m]) {
            const int m2 = int(term.partner);
            // a_m a_m2
            std::copy(occ, occ + P, v.begin());
            if (v[m2] > 0) {
              double amp = std::sqrt(double(v[m2]));
              v[m2]--;
              if (v[m] > 0) {
                amp *= std::sqrt(double(v[m]));
                v[m]--;
                if (in_basis(v)) row.push_back({std::uint32_t(basis.rank(v.data())), term.coeff * amp});
              }
            }
            // a*_m a*_m2
            std::copy(occ, occ + P, v.begin());
            {
              double amp = std::sqrt(double(v[m2] + 1));
              v[m2]++;
              amp *= std::sqrt(double(v[m] + 1));
              v[m]++;
              if (in_basis(v)) row.push_back({std::uint32_t(basis.rank(v.data())), term.coeff * amp});
            }
          }
          for (const auto& term : mixed[m]) {
            const int m2 = int(term.partner);
            // a_m a*_m2
            std::copy(occ, occ + P, v.begin());
            {
              double amp = std::sqrt(double(v[m2] + 1));
              v[m2]++;
              if (v[m] > 0) {
                amp *= std::sqrt(double(v[m]));
                v[m]--;
                if (in_basis(v)) row.push_back({std::uint32_t(basis.rank(v.data())), term.coeff * amp});
              }
            }
            // a*_m a_m2
            std::copy(occ, occ + P, v.begin());
            if (v[m2] > 0) {
              double amp = std::sqrt(double(v[m2]));
              v[m2]--;
              amp *= std::sqrt(double(v[m] + 1));
              v[m]++;
              if (in_basis(v)) row.push_back({std::uint32_t(basis.rank(v.data())), term.coeff * amp});
            }
          }
        }
      }
      merge_row(row);
      for (const auto& [c, val] : row) {
        if (c == s) {
          diag_[s] += val;
          continue;
        }
        col_.push_back(c);
        val_.push_back(val);
      }
      row_ptr_[s + 1] = col_.size();
    }
  }

  if ((model.kind == CouplingModel::MinimalCoupling || model.kind == CouplingModel::A2Only) &&
      alpha > 0.0 && P > 0) {
    factored_ = true;
    StateRanker big(P, cap + 1, tot + 1);
    big_dim_ = big.dimension();
    f_ptr_.assign(n + 1, 0);
    std::vector<std::uint8_t> v(P);
    for (std::size_t s = 0; s < n; ++s) {
      const auto* occ = basis.state(s);
      std::copy(occ, occ + P, v.begin());
      for (int m = 0; m < P; ++m) {
        const int nm = occ[m];
        if (nm > 0) {
          v[m] = std::uint8_t(nm - 1);
          f_target_.push_back(std::uint32_t(big.rank(v.data())));
          f_pair_.push_back(std::uint32_t(m));
          f_amp_.push_back(cm[m] * std::sqrt(double(nm)));
        }
        v[m] = std::uint8_t(nm + 1);
        f_target_.push_back(std::uint32_t(big.rank(v.data())));
        f_pair_.push_back(std::uint32_t(m));
        f_amp_.push_back(cm[m] * std::sqrt(double(nm + 1)));
        v[m] = std::uint8_t(nm);
      }
      f_ptr_[s + 1] = f_target_.size();
    }
  }
}

void SectorHamiltonian::apply(const double* x, double* y) const {
  const std::size_t n = dim();
  for (std::size_t s = 0; s < n; ++s) {
    double acc = diag_[s] * x[s];
    for (std::size_t e = row_ptr_[s]; e < row_ptr_[s + 1]; ++e) acc += val_[e] * x[col_[e]];
    y[s] = acc;
  }
  if (!factored_) return;
  thread_local std::vector<double> w;
  w.assign(big_dim_ * 3, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double xs = x[s];
    if (xs == 0.0) continue;
    for (std::size_t e = f_ptr_[s]; e < f_ptr_[s + 1]; ++e) {
      const double a = f_amp_[e] * xs;
      const Vec3& eps = pair_eps_[f_pair_[e]];
      double* wt = &w[std::size_t(f_target_[e]) * 3];
      wt[0] += a * eps[0];
      wt[1] += a * eps[1];
      wt[2] += a * eps[2];
    }
  }
  const double half_alpha = 0.5 * alpha_;
  for (std::size_t s = 0; s < n; ++s) {
    double acc = 0.0;
    for (std::size_t e = f_ptr_[s]; e < f_ptr_[s + 1]; ++e) {
      const Vec3& eps = pair_eps_[f_pair_[e]];
      const double* wt = &w[std::size_t(f_target_[e]) * 3];
      acc += f_amp_[e] * (eps[0] * wt[0] + eps[1] * wt[1] + eps[2] * wt[2]);
    }
    y[s] += half_alpha * acc;
  }
}

Eigen::MatrixXd SectorHamiltonian::dense() const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (n > 20000) fail(ErrorCode::Capacity, "dense Hamiltonian too large");
  Eigen::MatrixXd h(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n), col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply(e.data(), col.data());
    h.col(j) = col;
    e[j] = 0.0;
  }
  return h;
}

SectorHamiltonian assemble_hamiltonian(const OccupationBasis& basis, double alpha,
                                       const ModelSpec& model) {
  if (model.kind == CouplingModel::DensityCoupled && model.density.q.empty())
    fail(ErrorCode::InvalidInput, "density-coupled model needs a density table");
  return SectorHamiltonian(basis, alpha, model);
}

Eigen::MatrixXd ladder_matrix(const OccupationBasis& basis, std::size_t pair, bool creation) {
  const int P = basis.num_pairs();
  if (pair >= std::size_t(P)) fail(ErrorCode::InvalidInput, "pair index out of range");
  const auto n = static_cast<Eigen::Index>(basis.dim());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::uint8_t> v(P);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto* occ = basis.state(std::size_t(s));
    std::copy(occ, occ + P, v.begin());
    const int nm = occ[pair];
    if (creation) {
      if (nm + 1 > basis.cap_per_pair() || basis.photon_number(std::size_t(s)) + 1 > basis.cap_total())
        continue;
      v[pair] = std::uint8_t(nm + 1);
      a(static_cast<Eigen::Index>(basis.rank(v.data())), s) = std::sqrt(double(nm + 1));
    } else {
      if (nm == 0) continue;
      v[pair] = std::uint8_t(nm - 1);
      a(static_cast<Eigen::Index>(basis.rank(v.data())), s) = std::sqrt(double(nm));
    }
  }
  return a;
}

}  // namespace qb
