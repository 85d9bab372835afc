#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "qedbounds/fock.hpp"

namespace qb {

namespace {
constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max() / 4;
std::size_t sat_add(std::size_t a, std::size_t b) { return std::min(a + b, kSaturated); }
}  // namespace

StateRanker::StateRanker(int num_pairs, int cap_per_pair, int cap_total)
    : p_(num_pairs), c_(cap_per_pair), t_(cap_total) {
  if (num_pairs < 0 || cap_per_pair < 0 || cap_total < 0)
    fail(ErrorCode::InvalidInput, "caps and pair count must be >= 0");
  if (cap_per_pair > 250) fail(ErrorCode::InvalidInput, "per-pair cap too large");
  if (num_pairs == 0) t_ = 0;  // only the vacuum exists
  table_.assign(static_cast<std::size_t>(p_ + 1) * (t_ + 1), 0);
  auto at = [&](int pos, int r) -> std::size_t& { return table_[std::size_t(pos) * (t_ + 1) + r]; };
  at(p_, 0) = 1;
  for (int pos = p_ - 1; pos >= 0; --pos)
    for (int r = 0; r <= t_; ++r) {
      std::size_t s = 0;
      for (int u = 0; u <= std::min(c_, r); ++u) s = sat_add(s, at(pos + 1, r - u));
      at(pos, r) = s;
    }
  offsets_.assign(t_ + 2, 0);
  for (int t = 0; t <= t_; ++t) offsets_[t + 1] = sat_add(offsets_[t], at(0, t));
  dim_ = offsets_[t_ + 1];
}

std::size_t StateRanker::count(int pos, int remaining) const {
  if (remaining < 0 || remaining > t_) return 0;
  return table_[std::size_t(pos) * (t_ + 1) + remaining];
}

std::size_t StateRanker::rank(const std::uint8_t* v) const {
  int r = 0;
  for (int i = 0; i < p_; ++i) r += v[i];
  std::size_t idx = offsets_[r];
  for (int pos = 0; pos < p_ && r > 0; ++pos) {
    for (int u = std::min(c_, r); u > v[pos]; --u) idx += count(pos + 1, r - u);
    r -= v[pos];
  }
  return idx;
}

std::size_t projected_dimension(int num_pairs, int cap_per_pair, int cap_total) {
  return StateRanker(num_pairs, cap_per_pair, cap_total).dimension();
}

OccupationBasis::OccupationBasis(const ModeLattice& lattice, int cap_per_pair, int cap_total,
                                 const Vec3& total_momentum, std::size_t limit)
    : lattice_(&lattice),
      ranker_(static_cast<int>(lattice.pair_count()), cap_per_pair, cap_total),
      total_momentum_(total_momentum) {
  if (ranker_.dimension() > limit)
    throw Error(ErrorCode::Capacity,
                "basis dimension " + std::to_string(ranker_.dimension()) + " exceeds limit " +
                    std::to_string(limit));
  const int p = num_pairs();
  occ_.assign(ranker_.dimension() * std::size_t(p), 0);
  std::vector<std::uint8_t> cur(p, 0);
  std::size_t next = 0;
  std::function<void(int, int)> gen = [&](int pos, int r) {
    if (pos == p) {
      if (r == 0) {
        std::copy(cur.begin(), cur.end(), occ_.begin() + next * std::size_t(p));
        ++next;
      }
      return;
    }
    for (int u = std::min(cap_per_pair, r); u >= 0; --u) {
      if (ranker_.count(pos + 1, r - u) == 0) continue;
      cur[pos] = static_cast<std::uint8_t>(u);
      gen(pos + 1, r - u);
    }
    cur[pos] = 0;
  };
  for (int t = 0; t <= ranker_.cap_total(); ++t) gen(0, t);
  if (next != ranker_.dimension()) fail(ErrorCode::Numerical, "basis enumeration mismatch");
}

int OccupationBasis::photon_number(std::size_t i) const {
  const auto* s = state(i);
  int t = 0;
  for (int m = 0; m < num_pairs(); ++m) t += s[m];
  return t;
}

Vec3 OccupationBasis::electron_momentum(std::size_t i) const {
  const auto* s = state(i);
  Vec3 p = total_momentum_;
  for (int m = 0; m < num_pairs(); ++m) {
    if (!s[m]) continue;
    const auto& k = lattice_->mode(std::size_t(m) / 2).k;
    for (int j = 0; j < 3; ++j) p[j] -= k[j] * s[m];
  }
  return p;
}

OccupationBasis enumerate_basis(const ModeLattice& lattice, int cap_per_pair, int cap_total,
                                const Vec3& total_momentum, std::size_t limit) {
  if (cap_per_pair < 0 || cap_total < 0) fail(ErrorCode::InvalidInput, "caps must be >= 0");
  return OccupationBasis(lattice, cap_per_pair, cap_total, total_momentum, limit);
}

DensityTable DensityTable::uniform(const ModeLattice& lattice) {
  DensityTable d;
  d.q = {{0, 0, 0}};
  d.rho_hat = {1.0 / lattice.volume()};
  return d;
}

DensityTable DensityTable::point(const ModeLattice& lattice) {
  std::set<IVec3> qs;
  qs.insert({0, 0, 0});
  for (const auto& a : lattice.modes())
    for (const auto& b : lattice.modes()) {
      qs.insert({a.n[0] - b.n[0], a.n[1] - b.n[1], a.n[2] - b.n[2]});
      qs.insert({a.n[0] + b.n[0], a.n[1] + b.n[1], a.n[2] + b.n[2]});
    }
  DensityTable d;
  d.q.assign(qs.begin(), qs.end());
  d.rho_hat.assign(d.q.size(), 1.0 / lattice.volume());
  return d;
}

const char* to_string(CouplingModel m) {
  switch (m) {
    case CouplingModel::MinimalCoupling: return "minimal";
    case CouplingModel::A2Only: return "a2";
    case CouplingModel::DensityCoupled: return "density";
  }
  return "unknown";
}

}  // namespace qb
