#include <algorithm>
#include <cmath>

#include "qedbounds/bounds.hpp"
#include "qedbounds/numerics.hpp"

namespace qb {

double sinc2(double t) {
  const double a = std::abs(t);
  if (a < 1e-4) return 1.0 - a * a / 3.0;
  const double s = std::sin(a) / a;
  return s * s;
}

SineSquaredIntegral::SineSquaredIntegral(double u_max, double step) : h_(step) {
  if (!(step > 0.0)) fail(ErrorCode::InvalidInput, "table step must be > 0");
  const auto n = static_cast<std::size_t>(std::ceil(std::max(u_max, 0.0) / h_)) + 1;
  cum_.resize(n + 1);
  cum_[0] = 0.0;
  CompensatedSum acc;
  double err = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    acc.add(gk15_panel(sinc2, (i - 1) * h_, i * h_, &err));
    cum_[i] = acc.value();
  }
}

double SineSquaredIntegral::operator()(double u) const {
  if (u < 0.0) return -(*this)(-u);
  double err = 0.0;
  auto i = static_cast<std::size_t>(u / h_);
  if (i >= cum_.size()) {
    // past the table: continue from the last node panel by panel
    i = cum_.size() - 1;
    CompensatedSum acc;
    acc.add(cum_[i]);
    double a = i * h_;
    while (u - a > h_) {
      acc.add(gk15_panel(sinc2, a, a + h_, &err));
      a += h_;
    }
    acc.add(gk15_panel(sinc2, a, u, &err));
    return acc.value();
  }
  const double a = i * h_;
  if (u == a) return cum_[i];
  return cum_[i] + gk15_panel(sinc2, a, u, &err);
}

KEll k_ell(double alpha, double ell, double tol) {
  if (!(alpha >= 0.0) || !finite(alpha)) fail(ErrorCode::InvalidInput, "alpha must be >= 0");
  if (!(ell > 0.0) || !finite(ell)) fail(ErrorCode::InvalidInput, "ell must be > 0");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidInput, "tol must be > 0");

  KEll out;
  const double b = alpha * ell * ell / (8.0 * kPi);
  out.K_single_integral_bound =
      b < 1e-8 ? 1.0 - b / 12.0 : std::sqrt(kPi / b) * std::erf(0.5 * std::sqrt(b));
  if (alpha == 0.0) return out;

  const SineSquaredIntegral si2(ell / 4.0);
  const double pref = alpha * ell / (kPi * kPi);
  auto g = [&](double d) { return std::exp(-pref * d * si2(d * ell / 4.0)); };

  // The integrand depends on |x - y| only; integrate the lower triangle twice.
  const double inner_tol = 0.2 * tol;
  double inner_err = 0.0;
  auto inner = [&](double x) {
    if (x <= 0.0) return 0.0;
    auto r = integrate_gk([&](double y) { return g(x - y); }, 0.0, x, inner_tol);
    inner_err = std::max(inner_err, r.error);
    return r.value;
  };
  const auto outer = integrate_gk(inner, 0.0, 1.0, 0.25 * tol);
  out.K_value = 2.0 * outer.value;
  out.error_estimate = 2.0 * (outer.error + inner_err);
  if (out.error_estimate > tol)
    throw Error(ErrorCode::Numerical, "K_ell quadrature above tolerance", out.error_estimate);
  return out;
}

double rel_lower_root(double ell, double K) {
  const double a = 1.0 / ell, b = 0.5, r = std::sqrt(std::max(K, 0.0)) / (2.0 * ell);
  const double d = std::sqrt((a - b) * (a - b) + 4.0 * r);
  return 2.0 * (a * b - r) / ((a + b) + d);
}

BoundRecord rel_lower(double alpha, double lambda_uv, const RelLowerOptions& opts) {
  if (!(alpha > 0.0) || !finite(alpha)) fail(ErrorCode::InvalidInput, "alpha must be > 0");
  if (!(lambda_uv > 0.0) || !finite(lambda_uv))
    fail(ErrorCode::InvalidInput, "lambda_uv must be > 0");
  if (opts.grid_points < 3) fail(ErrorCode::InvalidInput, "need at least 3 grid points");

  auto u_of = [&](double ell) {
    const double K = k_ell(alpha, ell, opts.tol).K_value;
    const double u = rel_lower_root(ell, K);
    const double res = std::abs((1.0 / ell - u) * (0.5 - u) - std::sqrt(K) / (2.0 * ell));
    if (res > 1e-10) throw Error(ErrorCode::Numerical, "root residual too large", res);
    if (u >= std::min(0.5, 1.0 / ell)) fail(ErrorCode::Numerical, "root outside admissible range");
    return u;
  };

  const auto grid = log_space(0.1, 1e3 / std::sqrt(alpha), opts.grid_points);
  std::vector<double> us(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) us[i] = u_of(grid[i]);
  const auto i_best = static_cast<std::size_t>(std::max_element(us.begin(), us.end()) - us.begin());

  double ell_star = grid[i_best], u_star = us[i_best];
  if (i_best > 0 && i_best + 1 < grid.size()) {
    auto r = golden_section([&](double l) { return -u_of(l); }, grid[i_best - 1],
                            grid[i_best + 1], 1e-4);
    if (-r.fx > u_star) {
      u_star = -r.fx;
      ell_star = r.x;
    }
  }

  BoundRecord rec;
  rec.model = Model::Rel;
  rec.statistics = Statistics::Single;
  rec.side = Side::Lower;
  rec.alpha = alpha;
  rec.lambda_uv = lambda_uv;
  rec.aux_name = "ell_star";
  rec.aux_value = ell_star;
  rec.regime = "small alpha";
  if (!(u_star > 0.0)) {
    rec.value = 0.0;
    rec.degenerate = true;
    rec.note = "no positive root on the ell grid";
  } else {
    rec.value = lambda_uv * u_star;
  }
  return rec;
}

CoherentShift coherent_shift(const ModeLattice& lattice, double x) {
  CoherentShift s;
  s.x = x;
  const double lam = lattice.lambda_uv();
  for (std::size_t m = 0; m < lattice.mode_count(); ++m) {
    const auto& md = lattice.mode(m);
    if (!(md.norm_k > 0.5 * lam)) continue;
    const double k1 = md.k[0];
    // (exp(-i k1 x) - 1) / k1, with the k1 -> 0 limit -i x
    std::complex<double> phase;
    if (std::abs(k1 * x) < 1e-8)
      phase = {-0.5 * k1 * x * x, -x};
    else
      phase = {(std::cos(k1 * x) - 1.0) / k1, -std::sin(k1 * x) / k1};
    std::array<std::complex<double>, 2> f;
    for (int l = 0; l < 2; ++l) f[l] = phase * (lattice.pols()[m][l][0] / md.norm_k);
    s.modes.push_back(m);
    s.f.push_back(f);
  }
  return s;
}

OverlapResult overlap_exponent_lattice(double alpha, double ell, double x, double y,
                                       const ModeLattice& lattice) {
  if (!(alpha >= 0.0)) fail(ErrorCode::InvalidInput, "alpha must be >= 0");
  if (!(ell > 0.0)) fail(ErrorCode::InvalidInput, "ell must be > 0");
  const double xmax = ell / lattice.lambda_uv();
  if (x < 0.0 || y < 0.0 || x > xmax || y > xmax)
    fail(ErrorCode::InvalidInput, "x and y must lie in [0, ell / Lambda]");
  const auto fx = coherent_shift(lattice, x);
  const auto fy = coherent_shift(lattice, y);
  OverlapResult out;
  if (fx.modes.empty()) {
    out.degenerate = true;
    return out;
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < fx.modes.size(); ++i)
    for (int l = 0; l < 2; ++l) acc.add(std::norm(fx.f[i][l] - fy.f[i][l]));
  out.value = alpha / (2.0 * lattice.volume()) * acc.value();
  return out;
}

}  // namespace qb
