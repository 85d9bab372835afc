#include "qedbounds/quad_solver.hpp"

#include <fftw3.h>
#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <mutex>

#include "qedbounds/numerics.hpp"

namespace qb {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

inline int sign_of(int R, int axis) { return (R >> axis) & 1 ? -1 : 1; }
inline double chi(int irrep, int R) { return std::popcount(unsigned(irrep & R)) % 2 ? -1.0 : 1.0; }

// Autocorrelation (c * c)(p) for |p_i| <= half, via a real 3-D FFT.
std::vector<double> autocorrelation(const TrialProfile& prof, int half) {
  const int w = 2 * half + 1;
  std::vector<double> out(static_cast<std::size_t>(w) * w * w, 0.0);
  auto at = [&](int a, int b, int c) -> double& {
    return out[(static_cast<std::size_t>(a + half) * w + (b + half)) * w + (c + half)];
  };
  const int mp = prof.max_abs_m();
  if (mp == 0) {
    at(0, 0, 0) = prof.coeff[0] * prof.coeff[0];
    return out;
  }
  const int n = 4 * mp + 2;
  const int nh = n / 2 + 1;
  const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
  const std::size_t cplx_size = static_cast<std::size_t>(n) * n * nh;
  double* in = fftw_alloc_real(real_size);
  fftw_complex* spec = fftw_alloc_complex(cplx_size);
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fwd = fftw_plan_dft_r2c_3d(n, n, n, in, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_3d(n, n, n, spec, in, FFTW_ESTIMATE);
  }
  std::fill(in, in + real_size, 0.0);
  auto wrap = [n](int v) { return ((v % n) + n) % n; };
  for (std::size_t i = 0; i < prof.m.size(); ++i) {
    const auto& m = prof.m[i];
    in[(static_cast<std::size_t>(wrap(m[0])) * n + wrap(m[1])) * n + wrap(m[2])] = prof.coeff[i];
  }
  fftw_execute(fwd);
  // c is real and even, so its transform is real; |C|^2 gives c * c.
  for (std::size_t i = 0; i < cplx_size; ++i) {
    const double re = spec[i][0], im = spec[i][1];
    spec[i][0] = re * re + im * im;
    spec[i][1] = 0.0;
  }
  fftw_execute(bwd);
  const double inv = 1.0 / static_cast<double>(real_size);
  const int lim = std::min(half, 2 * mp);
  for (int a = -lim; a <= lim; ++a)
    for (int b = -lim; b <= lim; ++b)
      for (int c = -lim; c <= lim; ++c)
        at(a, b, c) = in[(static_cast<std::size_t>(wrap(a)) * n + wrap(b)) * n + wrap(c)] * inv;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(in);
  fftw_free(spec);
  return out;
}

void eig2(const double s[2][2], double val[2], double vec[2][2]) {
  // symmetric 2x2; vec[b] is the b-th eigenvector
  const double a = s[0][0], b = s[0][1], d = s[1][1];
  const double tr = 0.5 * (a + d);
  const double df = 0.5 * (a - d);
  const double r = std::hypot(df, b);
  val[0] = tr - r;
  val[1] = tr + r;
  if (r == 0.0) {
    vec[0][0] = 1; vec[0][1] = 0;
    vec[1][0] = 0; vec[1][1] = 1;
    return;
  }
  // eigenvector for the larger eigenvalue
  double x, y;
  if (df >= 0) {
    x = df + r;
    y = b;
  } else {
    x = b;
    y = r - df;
  }
  const double nn = std::hypot(x, y);
  x /= nn;
  y /= nn;
  vec[1][0] = x; vec[1][1] = y;
  vec[0][0] = -y; vec[0][1] = x;
}

}  // namespace

double TrialProfile::grad_term() const {
  const double dq = 2.0 * kPi / box_side;
  CompensatedSum s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double q2 = dq * dq * (double(m[i][0]) * m[i][0] + double(m[i][1]) * m[i][1] +
                                 double(m[i][2]) * m[i][2]);
    s.add(q2 * coeff[i] * coeff[i]);
  }
  return 0.5 * s.value();
}

int TrialProfile::max_abs_m() const {
  int r = 0;
  for (const auto& v : m)
    for (int c : v) r = std::max(r, std::abs(c));
  return r;
}

TrialProfile trial_profile(double K, const ModeLattice& lattice) {
  if (!(K > 0.0) || !finite(K)) fail(ErrorCode::InvalidInput, "K must be finite and > 0");
  const double dq = lattice.dual_spacing();
  const int mk = static_cast<int>(std::floor(K / dq)) + 1;
  if (mk > 400) fail(ErrorCode::Capacity, "trial profile grid too large");
  TrialProfile p;
  p.K = K;
  p.box_side = lattice.box_side();
  std::vector<double> w;
  for (int a = -mk; a <= mk; ++a)
    for (int b = -mk; b <= mk; ++b)
      for (int c = -mk; c <= mk; ++c) {
        const double q = dq * std::sqrt(double(a) * a + double(b) * b + double(c) * c);
        if (!(q < K)) continue;
        const double t = 1.0 - q / K;
        p.m.push_back({a, b, c});
        w.push_back(t * t * t);
      }
  if (p.m.size() < 2)
    fail(ErrorCode::Degenerate, "no nonzero dual-grid point inside |q| < K");
  CompensatedSum s;
  for (double x : w) s.add(x * x);
  p.norm_const = 1.0 / std::sqrt(s.value());
  p.coeff.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) p.coeff[i] = w[i] * p.norm_const;
  return p;
}

TrialProfile uniform_profile(const ModeLattice& lattice) {
  TrialProfile p;
  p.K = 0.0;
  p.box_side = lattice.box_side();
  p.m = {{0, 0, 0}};
  p.coeff = {1.0};
  p.norm_const = 1.0;
  return p;
}

QuadraticForm::QuadraticForm(const ModeLattice& lattice, double alpha,
                             std::vector<double> ghat, int half_width)
    : lattice_(&lattice), alpha_(alpha), ghat_(std::move(ghat)), half_(half_width) {}

double QuadraticForm::ghat(const IVec3& p) const {
  if (std::abs(p[0]) > half_ || std::abs(p[1]) > half_ || std::abs(p[2]) > half_) return 0.0;
  const int w = 2 * half_ + 1;
  return ghat_[(static_cast<std::size_t>(p[0] + half_) * w + (p[1] + half_)) * w + (p[2] + half_)];
}

double QuadraticForm::entry(std::size_t i, std::size_t j) const {
  const auto& mi = lattice_->mode(i / 2);
  const auto& mj = lattice_->mode(j / 2);
  double v = 0.0;
  if (i == j) v = mi.norm_k * mi.norm_k;
  if (alpha_ != 0.0) {
    const IVec3 d{mi.n[0] - mj.n[0], mi.n[1] - mj.n[1], mi.n[2] - mj.n[2]};
    v += alpha_ * dot(lattice_->eps(i), lattice_->eps(j)) * ghat(d);
  }
  return v;
}

double QuadraticForm::trace() const {
  CompensatedSum s;
  for (std::size_t i = 0; i < dim(); ++i) s.add(entry(i, i));
  return s.value();
}

Eigen::MatrixXd QuadraticForm::dense() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = entry(std::size_t(i), std::size_t(j));
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

std::vector<SymmetryBlock> QuadraticForm::symmetry_blocks() const {
  const ModeLattice& lat = *lattice_;
  // orbit representatives: modes with all n_i >= 0
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < lat.mode_count(); ++i) {
    const auto& n = lat.mode(i).n;
    if (n[0] >= 0 && n[1] >= 0 && n[2] >= 0) reps.push_back(i);
  }
  const std::size_t no = reps.size();
  struct OrbitData {
    std::array<std::size_t, 8> img;
    std::array<std::array<std::array<double, 2>, 2>, 8> U;  // U[R][mu][lambda]
  };
  std::vector<OrbitData> od(no);
  for (std::size_t o = 0; o < no; ++o) {
    const auto& md = lat.mode(reps[o]);
    for (int R = 0; R < 8; ++R) {
      IVec3 rn{sign_of(R, 0) * md.n[0], sign_of(R, 1) * md.n[1], sign_of(R, 2) * md.n[2]};
      auto j = lat.find(rn);
      if (!j) fail(ErrorCode::InvalidInput, "lattice not reflection symmetric");
      od[o].img[R] = *j;
      for (int lam = 0; lam < 2; ++lam) {
        const Vec3& e = lat.pols()[reps[o]][lam];
        const Vec3 re{sign_of(R, 0) * e[0], sign_of(R, 1) * e[1], sign_of(R, 2) * e[2]};
        for (int mu = 0; mu < 2; ++mu) od[o].U[R][mu][lam] = dot(lat.pols()[*j][mu], re);
      }
    }
  }
  // per-irrep orthonormal basis inside each orbit
  struct Local {
    int count = 0;
    double G[2][2] = {{0, 0}, {0, 0}};  // G[beta][lambda]
    int offset = 0;
  };
  std::vector<std::array<Local, 8>> loc(no);
  std::array<int, 8> dims{};
  for (std::size_t o = 0; o < no; ++o) {
    for (int ir = 0; ir < 8; ++ir) {
      double S[2][2] = {{0, 0}, {0, 0}};
      for (int R = 0; R < 8; ++R) {
        if (od[o].img[R] != reps[o]) continue;
        const double c = chi(ir, R) / 8.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) S[a][b] += c * od[o].U[R][a][b];
      }
      S[0][1] = S[1][0] = 0.5 * (S[0][1] + S[1][0]);
      double val[2], vec[2][2];
      eig2(S, val, vec);
      Local& L = loc[o][ir];
      L.offset = dims[ir];
      for (int b = 0; b < 2; ++b) {
        if (val[b] > 1e-9) {
          const double inv = 1.0 / std::sqrt(val[b]);
          L.G[L.count][0] = vec[b][0] * inv;
          L.G[L.count][1] = vec[b][1] * inv;
          ++L.count;
        }
      }
      dims[ir] += L.count;
    }
  }
  std::vector<SymmetryBlock> blocks(8);
  for (int ir = 0; ir < 8; ++ir) {
    blocks[ir].irrep = ir;
    blocks[ir].dim = dims[ir];
    blocks[ir].a.assign(static_cast<std::size_t>(dims[ir]) * dims[ir], 0.0);
  }
  for (std::size_t o = 0; o < no; ++o) {
    const std::size_t ko = reps[o];
    const auto& mo = lat.mode(ko);
    for (std::size_t o2 = o; o2 < no; ++o2) {
      double X[8][2][2];
      for (int R = 0; R < 8; ++R) {
        const std::size_t j = od[o2].img[R];
        const auto& mj = lat.mode(j);
        const IVec3 d{mo.n[0] - mj.n[0], mo.n[1] - mj.n[1], mo.n[2] - mj.n[2]};
        const double g = alpha_ == 0.0 ? 0.0 : alpha_ * ghat(d);
        double Mb[2][2];
        for (int l = 0; l < 2; ++l)
          for (int mu = 0; mu < 2; ++mu) {
            double v = g == 0.0 ? 0.0 : g * dot(lat.pols()[ko][l], lat.pols()[j][mu]);
            if (j == ko && l == mu) v += mo.norm_k * mo.norm_k;
            Mb[l][mu] = v;
          }
        for (int l = 0; l < 2; ++l)
          for (int lp = 0; lp < 2; ++lp)
            X[R][l][lp] = Mb[l][0] * od[o2].U[R][0][lp] + Mb[l][1] * od[o2].U[R][1][lp];
      }
      for (int ir = 0; ir < 8; ++ir) {
        const Local& A = loc[o][ir];
        const Local& B = loc[o2][ir];
        if (A.count == 0 || B.count == 0) continue;
        double W[2][2] = {{0, 0}, {0, 0}};
        for (int R = 0; R < 8; ++R) {
          const double c = chi(ir, R) / 8.0;
          for (int l = 0; l < 2; ++l)
            for (int lp = 0; lp < 2; ++lp) W[l][lp] += c * X[R][l][lp];
        }
        auto& blk = blocks[ir];
        for (int b = 0; b < A.count; ++b)
          for (int b2 = 0; b2 < B.count; ++b2) {
            double v = 0.0;
            for (int l = 0; l < 2; ++l)
              for (int lp = 0; lp < 2; ++lp) v += A.G[b][l] * W[l][lp] * B.G[b2][lp];
            const std::size_t r = A.offset + b, c = B.offset + b2;
            blk.a[r * blk.dim + c] = v;
            blk.a[c * blk.dim + r] = v;
          }
      }
    }
  }
  // symmetrize diagonal orbit blocks exactly
  for (auto& blk : blocks)
    for (int r = 0; r < blk.dim; ++r)
      for (int c = r + 1; c < blk.dim; ++c) {
        const double v = 0.5 * (blk.a[std::size_t(r) * blk.dim + c] + blk.a[std::size_t(c) * blk.dim + r]);
        blk.a[std::size_t(r) * blk.dim + c] = v;
        blk.a[std::size_t(c) * blk.dim + r] = v;
      }
  return blocks;
}

QuadraticForm assemble_dressing_matrix(const ModeLattice& lattice, double alpha,
                                       const TrialProfile& profile) {
  if (!(alpha >= 0.0) || !finite(alpha)) fail(ErrorCode::InvalidInput, "alpha must be >= 0");
  if (std::abs(profile.box_side - lattice.box_side()) > 1e-12 * lattice.box_side())
    fail(ErrorCode::InvalidInput, "profile was built for a different box");
  if (profile.m.size() != profile.coeff.size() || profile.m.empty())
    fail(ErrorCode::InvalidInput, "malformed profile");
  const int half = 2 * lattice.max_abs_n();
  auto g = autocorrelation(profile, half);
  const double inv_v = 1.0 / lattice.volume();
  for (double& x : g) x *= inv_v;
  return QuadraticForm(lattice, alpha, std::move(g), half);
}

std::vector<double> form_eigenvalues(const QuadraticForm& form, EigenRoute route) {
  std::vector<double> ev;
  ev.reserve(form.dim());
  if (form.dim() == 0) return ev;
  if (route == EigenRoute::Dense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form.dense(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::Numerical, "dense eigensolver did not converge");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i]);
  } else {
    auto blocks = form.symmetry_blocks();
    std::size_t total = 0;
    for (auto& b : blocks) {
      total += static_cast<std::size_t>(b.dim);
      if (b.dim == 0) continue;
      std::vector<double> w(b.dim);
      lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', b.dim, b.a.data(), b.dim, w.data());
      if (info != 0)
        throw Error(ErrorCode::Numerical, "block eigensolver failed, info " + std::to_string(info));
      ev.insert(ev.end(), w.begin(), w.end());
    }
    if (total != form.dim())
      fail(ErrorCode::Numerical, "symmetry blocks do not cover the pair basis");
    std::sort(ev.begin(), ev.end());
  }
  CompensatedSum s, sa;
  for (double x : ev) {
    s.add(x);
    sa.add(std::abs(x));
  }
  const double tr = form.trace();
  if (std::abs(s.value() - tr) > 1e-10 * std::max(sa.value(), 1e-300))
    throw Error(ErrorCode::Numerical, "eigenvalue trace check failed",
                std::abs(s.value() - tr) / sa.value());
  const double top = std::max(std::abs(ev.front()), std::abs(ev.back()));
  if (ev.front() < -1e-10 * top)
    throw Error(ErrorCode::Numerical, "dressing matrix is not positive semidefinite", ev.front());
  for (double& x : ev) x = std::max(x, 0.0);
  return ev;
}

double traceroot_gap(const QuadraticForm& form, const ModeLattice& lattice, EigenRoute route) {
  if (&form.lattice() != &lattice && form.dim() != lattice.pair_count())
    fail(ErrorCode::InvalidInput, "form and lattice disagree");
  auto ev = form_eigenvalues(form, route);
  std::vector<double> k(lattice.pair_count());
  for (std::size_t p = 0; p < k.size(); ++p) k[p] = lattice.pair_norm_k(p);
  std::sort(k.begin(), k.end());
  // M >= -Laplacian, so sorted differences are nonnegative and summed without cancellation
  CompensatedSum s;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double r = std::sqrt(ev[i]);
    s.add((ev[i] - k[i] * k[i]) / (r + k[i] > 0 ? r + k[i] : 1.0));
  }
  return 0.5 * s.value();
}

EnergyBreakdown a2_variational_energy(const ModeLattice& lattice, double alpha, double K,
                                      EigenRoute route) {
  if (!(alpha >= 0.0)) fail(ErrorCode::InvalidInput, "alpha must be >= 0");
  auto prof = trial_profile(K, lattice);
  EnergyBreakdown e;
  e.grad_term = prof.grad_term();
  if (!lattice.empty()) {
    auto form = assemble_dressing_matrix(lattice, alpha, prof);
    e.traceroot_term = traceroot_gap(form, lattice, route);
  }
  e.total = e.grad_term + e.traceroot_term;
  return e;
}

EnergyBreakdown a2_uniform_energy(const ModeLattice& lattice, double alpha) {
  const double shift = alpha / lattice.volume();
  CompensatedSum s;
  for (const auto& m : lattice.modes())
    s.add(2.0 * shift / (std::sqrt(m.norm_k * m.norm_k + shift) + m.norm_k));
  EnergyBreakdown e;
  e.traceroot_term = 0.5 * s.value();
  e.total = e.traceroot_term;
  return e;
}

OptimizeKResult optimize_K(const ModeLattice& lattice, double alpha) {
  if (!(alpha > 0.0)) fail(ErrorCode::InvalidInput, "optimize_K needs alpha > 0");
  OptimizeKResult out;
  double lo = lattice.dual_spacing();
  const double hi = 2.0 * lattice.lambda_uv();
  try {
    out.energy_lo = a2_variational_energy(lattice, alpha, lo);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Degenerate) throw;
    lo *= 1.05;
    out.energy_lo = a2_variational_energy(lattice, alpha, lo);
  }
  if (!(hi > lo)) fail(ErrorCode::Degenerate, "empty K bracket");
  out.K_lo = lo;
  out.K_hi = hi;
  out.energy_hi = a2_variational_energy(lattice, alpha, hi);
  auto f = [&](double K) { return a2_variational_energy(lattice, alpha, K).total; };
  auto r = scan_and_refine(f, lo, hi, 12, 1e-3);
  out.evaluations = r.evaluations + 2;
  out.K_star = r.x;
  if (out.energy_lo.total < r.fx) out.K_star = lo;
  if (out.energy_hi.total < std::min(r.fx, out.energy_lo.total)) out.K_star = hi;
  out.energy = a2_variational_energy(lattice, alpha, out.K_star);
  return out;
}

AdaptedUpper lattice_adapted_upper_bound(const ModeLattice& lattice, double alpha) {
  AdaptedUpper u;
  auto uni = a2_uniform_energy(lattice, alpha);
  auto opt = optimize_K(lattice, alpha);
  u.K_star = opt.K_star;
  if (uni.total <= opt.energy.total) {
    u.value = uni.total;
    u.from_uniform = true;
  } else {
    u.value = opt.energy.total;
  }
  return u;
}

BoundRecord commutator_lower_bound(double alpha, double lambda_uv, const ModeLattice* lattice) {
  if (!(alpha >= 0.0) || !(lambda_uv > 0.0) || !finite(alpha) || !finite(lambda_uv))
    fail(ErrorCode::InvalidInput, "commutator bound needs alpha >= 0, lambda > 0");
  BoundRecord r;
  r.model = Model::Nonrel;
  r.statistics = Statistics::Single;
  r.side = Side::Lower;
  r.alpha = alpha;
  r.lambda_uv = lambda_uv;
  if (!lattice) {
    const double c1 = 1.0 / (3.0 * kPi) * std::sqrt(0.5);
    r.value = c1 * std::sqrt(alpha) * std::pow(lambda_uv, 1.5) - 9.0 / 8.0 * lambda_uv;
    r.constants_used = {{"c_nonrel_lower", c1}, {"field_constant", 9.0 / 8.0}};
    r.regime = "continuum";
    return r;
  }
  r.box_side = lattice->box_side();
  r.regime = "lattice";
  if (lattice->empty()) {
    r.value = 0.0;
    r.degenerate = true;
    r.note = "empty lattice";
    return r;
  }
  const Mat3 t = transverse_sum(*lattice);
  Eigen::Matrix3d tm;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tm(i, j) = t[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(tm, Eigen::EigenvaluesOnly);
  const double tmax = es.eigenvalues().maxCoeff();
  const double trace = tm.trace();
  const ModeSums sums = mode_weighted_sums(*lattice);
  const double c2 = 1.0 / (2.0 * tmax);
  r.value = std::sqrt(alpha) * trace / (2.0 * std::sqrt(tmax)) - sums.S_k / tmax;
  r.constants_used = {{"t_max", tmax}, {"trace_T", trace}, {"S_k", sums.S_k}, {"c_squared", c2}};
  return r;
}

namespace {
// Constants of the uncertainty-principle chain.
struct A2LowerConstants {
  double c_pi;       // Pi^2 >= c_pi Lambda^6 A^{-2}
  double c_w;        // sup w <= 1
  double gamma;      // 2 sqrt(c_pi alpha / 2) Lambda^3
  double sub_coeff;  // subtraction = sub_coeff Lambda^4 what(0)
};
A2LowerConstants a2_constants(double alpha, double lambda_uv) {
  A2LowerConstants c;
  c.c_pi = 1.0 / (4.0 * std::pow(3.0 * kPi, 4));
  c.c_w = 3.0 / (4.0 * kPi);
  // the smeared field-energy step trades Pi^2 at coefficient 1/4
  c.gamma = 2.0 * std::sqrt(0.25 * c.c_pi * alpha / 2.0) * std::pow(lambda_uv, 3);
  c.sub_coeff = 3.0 / (8.0 * kPi * kPi);
  return c;
}
}  // namespace

double a2_lower_objective(double alpha, double lambda_uv, double R) {
  const auto c = a2_constants(alpha, lambda_uv);
  const double w0 = c.c_w * std::pow(2.0 * kPi, 3) / (R * R * R);
  const double symbol_min = std::min(c.gamma * std::sqrt(w0), 0.5 * R * R);
  return symbol_min - c.sub_coeff * std::pow(lambda_uv, 4) * w0;
}

BoundRecord a2_lower_bound(double alpha, double lambda_uv) {
  if (!(alpha > 0.0) || !(lambda_uv > 0.0) || !finite(alpha) || !finite(lambda_uv))
    fail(ErrorCode::InvalidInput, "a2_lower_bound needs alpha > 0, lambda > 0");
  auto f = [&](double R) { return -a2_lower_objective(alpha, lambda_uv, R); };
  double r0 = std::pow(lambda_uv, 6.0 / 7.0);
  double f0 = f(r0);
  // geometric bracketing of the unimodal objective
  double step = 2.0;
  double r1 = r0 * step, f1 = f(r1);
  if (f1 > f0) {
    step = 0.5;
    r1 = r0 * step;
    f1 = f(r1);
  }
  double rp = r0;
  int guard = 0;
  while (f1 < f0 && guard++ < 400) {
    rp = r0;
    r0 = r1;
    f0 = f1;
    r1 = r0 * step;
    f1 = f(r1);
  }
  double a = std::min(rp, r1), b = std::max(rp, r1);
  auto res = golden_section(f, a, b, 1e-3);
  const auto c = a2_constants(alpha, lambda_uv);
  BoundRecord r;
  r.model = Model::A2;
  r.statistics = Statistics::Single;
  r.side = Side::Lower;
  r.alpha = alpha;
  r.lambda_uv = lambda_uv;
  r.value = -res.fx;
  r.aux_name = "R_star";
  r.aux_value = res.x;
  r.regime = "continuum";
  r.constants_used = {{"c_pi", c.c_pi}, {"c_w", c.c_w}, {"gamma", c.gamma},
                      {"subtraction_coeff", c.sub_coeff}};
  return r;
}

}  // namespace qb
