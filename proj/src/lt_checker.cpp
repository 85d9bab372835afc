#include "qedbounds/lt_checker.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <set>

namespace qb {

int OrbitalSet::n_particles() const {
  int n = 0;
  for (const auto& c : channels) n += static_cast<int>(c.size());
  return n;
}

Vec3 OrbitalSet::momentum(const IVec3& n) const {
  const double s = 2.0 * kPi / box_side;
  return {s * n[0], s * n[1], s * n[2]};
}

void OrbitalSet::validate() const {
  if (!(box_side > 0.0)) fail(ErrorCode::InvalidInput, "box side must be > 0");
  if (q < 1) fail(ErrorCode::InvalidInput, "q must be >= 1");
  if (static_cast<int>(channels.size()) > q)
    fail(ErrorCode::InvalidInput, "more spin channels than q");
  if (n_particles() < 1) fail(ErrorCode::InvalidInput, "no particles");
  for (const auto& c : channels) {
    std::set<IVec3> seen(c.begin(), c.end());
    if (seen.size() != c.size())
      fail(ErrorCode::InvalidInput, "repeated momentum in a spin channel (determinant vanishes)");
  }
}

OrbitalSet free_fermion_orbitals(int N, int q, double box_side) {
  if (N < 1 || q < 1) fail(ErrorCode::InvalidInput, "N and q must be >= 1");
  OrbitalSet o;
  o.box_side = box_side;
  o.q = q;
  const int per = (N + q - 1) / q;
  int r = 1;
  std::vector<IVec3> pool;
  while (static_cast<int>(pool.size()) < per) {
    pool.clear();
    for (int a = -r; a <= r; ++a)
      for (int b = -r; b <= r; ++b)
        for (int c = -r; c <= r; ++c)
          if (a || b || c) pool.push_back({a, b, c});
    ++r;
  }
  auto n2 = [](const IVec3& n) { return n[0] * n[0] + n[1] * n[1] + n[2] * n[2]; };
  std::stable_sort(pool.begin(), pool.end(),
                   [&](const IVec3& a, const IVec3& b) { return n2(a) < n2(b); });
  o.channels.assign(std::min(q, N), {});
  for (int j = 0; j < N; ++j) {
    auto& ch = o.channels[j % q];
    ch.push_back(pool[ch.size()]);
  }
  o.validate();
  return o;
}

std::vector<int> neighbor_counts(const Configuration& X, double R, double box_side) {
  if (!(R > 0.0)) fail(ErrorCode::InvalidInput, "R must be > 0");
  const std::size_t n = X.size();
  std::vector<int> out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        double d = X[i][a] - X[j][a];
        if (box_side > 0.0) d -= box_side * std::round(d / box_side);
        d2 += d * d;
      }
      if (d2 < R * R) {
        ++out[i];
        ++out[j];
      }
    }
  return out;
}

namespace {

class SlaterDensity {
 public:
  explicit SlaterDensity(const OrbitalSet& o) : o_(o) {
    int start = 0;
    for (const auto& c : o.channels) {
      first_.push_back(start);
      start += static_cast<int>(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) owner_.push_back(int(first_.size()) - 1);
    }
  }
  int channel_of(int particle) const { return owner_[particle]; }

  double channel_weight(int c, const Configuration& X) const {
    const auto& ks = o_.channels[c];
    const int n = static_cast<int>(ks.size());
    Eigen::MatrixXcd m(n, n);
    for (int a = 0; a < n; ++a) {
      const Vec3 k = o_.momentum(ks[a]);
      for (int b = 0; b < n; ++b) {
        const double ph = dot(k, X[first_[c] + b]);
        m(a, b) = {std::cos(ph), std::sin(ph)};
      }
    }
    return std::norm(m.determinant());
  }

 private:
  const OrbitalSet& o_;
  std::vector<int> first_, owner_;
};

}  // namespace

SampleRun sample_slater(const OrbitalSet& orbitals, std::size_t n_samples, std::size_t burn_in,
                        std::uint64_t seed) {
  orbitals.validate();
  if (n_samples < 1) fail(ErrorCode::InvalidInput, "n_samples must be >= 1");
  const double L = orbitals.box_side;
  const int N = orbitals.n_particles();
  SlaterDensity dens(orbitals);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss;

  Configuration X(N);
  std::vector<double> w(orbitals.channels.size());
  for (int attempt = 0;; ++attempt) {
    for (auto& x : X)
      for (auto& c : x) c = L * uni(rng);
    bool ok = true;
    for (std::size_t c = 0; c < w.size(); ++c) {
      w[c] = dens.channel_weight(int(c), X);
      ok = ok && w[c] > 1e-12;
    }
    if (ok) break;
    if (attempt > 1000) fail(ErrorCode::Numerical, "could not find a start with nonzero weight");
  }

  double width = 0.25 * L;
  std::size_t acc = 0, tried = 0, win_acc = 0, win_tried = 0;
  auto sweep = [&](bool count) {
    for (int j = 0; j < N; ++j) {
      const int c = dens.channel_of(j);
      const Vec3 old = X[j];
      for (int a = 0; a < 3; ++a) {
        double v = X[j][a] + width * gauss(rng);
        v -= L * std::floor(v / L);
        X[j][a] = v;
      }
      const double wn = dens.channel_weight(c, X);
      const bool accept = wn >= w[c] || uni(rng) * w[c] < wn;
      if (accept)
        w[c] = wn;
      else
        X[j] = old;
      ++win_tried;
      win_acc += accept;
      if (count) {
        ++tried;
        acc += accept;
      }
    }
  };

  for (std::size_t s = 0; s < burn_in; ++s) {
    sweep(false);
    if (win_tried >= 100) {
      const double rate = double(win_acc) / double(win_tried);
      width = std::clamp(width * std::exp(rate - 0.3), 1e-4 * L, L);
      win_acc = win_tried = 0;
    }
  }

  SampleRun run;
  run.samples.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    sweep(true);
    run.samples.push_back(X);
  }
  run.stats.n_samples = n_samples;
  run.stats.seed = seed;
  run.stats.acceptance_rate = tried ? double(acc) / double(tried) : 0.0;
  run.stats.step_width = width;
  return run;
}

LtResult lt_ratio_from_samples(const OrbitalSet& orbitals, const SampleRun& run, double R,
                               LtMode mode, int batches, double c) {
  if (!(R > 0.0)) fail(ErrorCode::InvalidInput, "R must be > 0");
  if (run.samples.empty()) fail(ErrorCode::InvalidInput, "empty sample stream");
  const bool rel = mode == LtMode::Rel;
  LtResult out;
  out.stats = run.stats;

  CompensatedSum lhs;
  for (const auto& ch : orbitals.channels)
    for (const auto& n : ch) {
      const double k = norm(orbitals.momentum(n));
      lhs.add(rel ? k : k * k);
    }
  out.lhs = lhs.value();

  const double expo = rel ? 1.0 / 3.0 : 2.0 / 3.0;
  std::vector<double> vals;
  vals.reserve(run.samples.size());
  for (const auto& X : run.samples) {
    double s = 0.0;
    for (int nj : neighbor_counts(X, R, orbitals.box_side)) s += std::pow(double(nj), expo);
    vals.push_back(s);
  }

  // batch means for the standard error of the correlated chain
  const std::size_t nb = std::max<std::size_t>(
      2, std::min<std::size_t>(std::size_t(std::max(batches, 2)), vals.size()));
  const std::size_t bs = vals.size() / nb;
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= double(vals.size());
  double se = 0.0;
  if (bs >= 1) {
    std::vector<double> bm(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t i = 0; i < bs; ++i) bm[b] += vals[b * bs + i];
      bm[b] /= double(bs);
    }
    double m = 0.0;
    for (double v : bm) m += v;
    m /= double(nb);
    double var = 0.0;
    for (double v : bm) var += (v - m) * (v - m);
    var /= double(nb - 1);
    se = std::sqrt(var / double(nb));
  }

  const double q = orbitals.q;
  const double pref = rel ? c / (std::cbrt(q) * R) : c / (std::cbrt(q * q) * R * R);
  out.rhs = pref * mean;
  out.rhs_stderr = pref * se;
  if (out.rhs == 0.0) {
    out.infinite = true;
    out.ratio = std::numeric_limits<double>::infinity();
    out.stderr_ratio = 0.0;
  } else {
    out.ratio = out.lhs / out.rhs;
    out.stderr_ratio = out.ratio * out.rhs_stderr / out.rhs;
  }
  return out;
}

LtResult lt_ratio(const OrbitalSet& orbitals, double R, LtMode mode, const SampleParams& params,
                  double c) {
  const auto run = sample_slater(orbitals, params.n_samples, params.burn_in, params.seed);
  return lt_ratio_from_samples(orbitals, run, R, mode, params.batches, c);
}

}  // namespace qb
