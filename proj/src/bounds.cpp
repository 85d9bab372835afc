#include "qedbounds/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "qedbounds/quad_solver.hpp"

namespace qb {

const char* to_string(Model m) {
  switch (m) {
    case Model::Nonrel: return "nonrel";
    case Model::A2: return "a2";
    case Model::Rel: return "rel";
    case Model::Pauli: return "pauli";
  }
  return "unknown";
}

const char* to_string(Statistics s) {
  switch (s) {
    case Statistics::Single: return "single";
    case Statistics::Boson: return "boson";
    case Statistics::Fermion: return "fermion";
  }
  return "unknown";
}

const char* to_string(Side s) { return s == Side::Upper ? "upper" : "lower"; }

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Explicit: return "explicit";
    case Provenance::Calibrated: return "calibrated";
    case Provenance::User: return "user";
  }
  return "unknown";
}

const std::vector<std::string>& ConstantsSet::known_names() {
  static const std::vector<std::string> names = {
      "c_nonrel_lower",      "c_nonrel_upper",      "c_rel_upper",
      "c_lt",                "c_rel_lower_small",   "c_rel_lower_large",
      "c_pauli_upper",       "c_pauli_lower_small", "c_pauli_lower_large"};
  return names;
}

bool ConstantsSet::is_known(const std::string& name) {
  const auto& n = known_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

ConstantsSet ConstantsSet::defaults() {
  ConstantsSet c;
  c.set("c_nonrel_lower", 1.0 / (3.0 * kPi * std::sqrt(2.0)), Provenance::Explicit,
        "commutator bound prefactor");
  c.set("c_rel_upper", 1.0 / std::sqrt(4.0 * kPi), Provenance::Explicit,
        "vacuum trial state");
  c.set("c_lt", 0.00127, Provenance::Explicit, "neighbor-counting kinetic inequality");
  c.set("c_nonrel_upper", kCalibratedCNonrelUpper, Provenance::Calibrated,
        "optimize_K at alpha=100, Lambda=10, Lambda L/2pi=10");
  return c;
}

void ConstantsSet::set(const std::string& name, double value, Provenance p,
                       const std::string& note) {
  if (!is_known(name)) fail(ErrorCode::Configuration, "unknown constant '" + name + "'");
  if (!(value > 0.0) || !finite(value))
    fail(ErrorCode::Configuration, "constant '" + name + "' must be finite and > 0");
  entries_[name] = {value, p, note};
}

const ConstantEntry& ConstantsSet::entry(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) fail(ErrorCode::Configuration, "missing constant '" + name + "'");
  return it->second;
}

double ConstantsSet::get(const std::string& name) const { return entry(name).value; }

double calibrate_c_nonrel_upper(const CalibrationReference& ref) {
  PhysParams p;
  p.alpha = ref.alpha;
  p.lambda_uv = ref.lambda_uv;
  p.box_side = 2.0 * kPi * ref.lattice_ratio / ref.lambda_uv;
  p.validate();
  ModeLattice lat(p);
  const auto r = optimize_K(lat, ref.alpha);
  return r.energy.total / (std::pow(ref.alpha, 2.0 / 7.0) * std::pow(ref.lambda_uv, 12.0 / 7.0));
}

namespace {

void check_coupling(double alpha, double lambda_uv) {
  if (!(alpha >= 0.0) || !finite(alpha)) fail(ErrorCode::InvalidInput, "alpha must be >= 0");
  if (!(lambda_uv > 0.0) || !finite(lambda_uv))
    fail(ErrorCode::InvalidInput, "lambda_uv must be > 0");
}

BoundRecord make(Model m, Statistics st, Side side, double value, double alpha,
                 double lambda_uv, int n) {
  BoundRecord r;
  r.model = m;
  r.statistics = st;
  r.side = side;
  r.value = value;
  r.alpha = alpha;
  r.lambda_uv = lambda_uv;
  r.n_particles = n;
  if (!finite(value)) fail(ErrorCode::Numerical, "bound value is not finite");
  return r;
}

}  // namespace

BoundRecord rel_upper(double alpha, double lambda_uv, const ConstantsSet& constants) {
  check_coupling(alpha, lambda_uv);
  const double c = constants.get("c_rel_upper");
  auto r = make(Model::Rel, Statistics::Single, Side::Upper, c * std::sqrt(alpha) * lambda_uv,
                alpha, lambda_uv, 1);
  r.constants_used["c_rel_upper"] = c;
  return r;
}

BoundPair nonrel_theorem_bounds(int N, double alpha, double lambda_uv,
                                const ConstantsSet& constants, Statistics statistics) {
  if (N < 1) fail(ErrorCode::InvalidInput, "N must be >= 1");
  check_coupling(alpha, lambda_uv);
  const double c1 = constants.get("c_nonrel_lower");
  const double c2 = constants.get("c_nonrel_upper");
  if (statistics == Statistics::Single) N = 1;
  const double n = N;
  const double lo_base = c1 * std::sqrt(alpha) * std::pow(lambda_uv, 1.5);
  const double up_base = c2 * std::pow(alpha, 2.0 / 7.0) * std::pow(lambda_uv, 12.0 / 7.0);
  BoundPair out;
  if (statistics == Statistics::Boson) {
    out.lower = make(Model::Nonrel, statistics, Side::Lower, std::sqrt(n) * lo_base, alpha,
                     lambda_uv, N);
    out.upper = make(Model::Nonrel, statistics, Side::Upper, std::pow(n, 5.0 / 7.0) * up_base,
                     alpha, lambda_uv, N);
  } else {
    out.lower = make(Model::Nonrel, statistics, Side::Lower, n * lo_base, alpha, lambda_uv, N);
    out.upper = make(Model::Nonrel, statistics, Side::Upper, n * up_base, alpha, lambda_uv, N);
  }
  for (auto* r : {&out.lower, &out.upper}) {
    r->constants_used["c_nonrel_lower"] = c1;
    r->constants_used["c_nonrel_upper"] = c2;
  }
  return out;
}

std::vector<BoundRecord> pauli_bounds(double alpha, double lambda_uv, int N,
                                      const ConstantsSet& constants) {
  if (N < 1) fail(ErrorCode::InvalidInput, "N must be >= 1");
  check_coupling(alpha, lambda_uv);
  const double c3 = constants.get("c_pauli_upper");
  const double c1 = constants.get("c_pauli_lower_small");
  const double c2 = constants.get("c_pauli_lower_large");
  const double n = N;
  std::vector<BoundRecord> v;
  v.push_back(make(Model::Pauli, Statistics::Fermion, Side::Upper,
                   c3 * std::sqrt(alpha) * std::pow(lambda_uv, 1.5) * n, alpha, lambda_uv, N));
  v.back().constants_used["c_pauli_upper"] = c3;
  v.push_back(make(Model::Pauli, Statistics::Fermion, Side::Lower, c1 * alpha * lambda_uv * n,
                   alpha, lambda_uv, N));
  v.back().regime = "small alpha";
  v.back().constants_used["c_pauli_lower_small"] = c1;
  v.push_back(make(Model::Pauli, Statistics::Fermion, Side::Lower,
                   c2 * std::cbrt(alpha) * lambda_uv * n, alpha, lambda_uv, N));
  v.back().regime = "large alpha";
  v.back().constants_used["c_pauli_lower_large"] = c2;
  return v;
}

std::vector<BoundRecord> rel_fermion_bounds(int N, double alpha, double lambda_uv,
                                            const ConstantsSet& constants) {
  if (N < 1) fail(ErrorCode::InvalidInput, "N must be >= 1");
  check_coupling(alpha, lambda_uv);
  const double c = constants.get("c_rel_upper");
  const double cs = constants.get("c_rel_lower_small");
  const double cl = constants.get("c_rel_lower_large");
  const double n = N;
  const Statistics st = N == 1 ? Statistics::Single : Statistics::Fermion;
  std::vector<BoundRecord> v;
  v.push_back(make(Model::Rel, st, Side::Upper, c * n * std::sqrt(alpha) * lambda_uv, alpha,
                   lambda_uv, N));
  v.back().constants_used["c_rel_upper"] = c;
  v.push_back(make(Model::Rel, st, Side::Lower, cs * n * std::sqrt(alpha) * lambda_uv, alpha,
                   lambda_uv, N));
  v.back().regime = "small alpha";
  v.back().constants_used["c_rel_lower_small"] = cs;
  v.push_back(make(Model::Rel, st, Side::Lower, cl * n * lambda_uv, alpha, lambda_uv, N));
  v.back().regime = "large alpha";
  v.back().constants_used["c_rel_lower_large"] = cl;
  return v;
}

BindingWindow binding_window(double alpha, double lambda_uv, const ConstantsSet& constants) {
  check_coupling(alpha, lambda_uv);
  if (!(alpha > 0.0)) fail(ErrorCode::InvalidInput, "alpha must be > 0");
  const double c1 = constants.get("c_nonrel_lower");
  const double c2 = constants.get("c_nonrel_upper");
  const double lo1 = c1 * std::sqrt(alpha) * std::pow(lambda_uv, 1.5);
  const double up1 = c2 * std::pow(alpha, 2.0 / 7.0) * std::pow(lambda_uv, 12.0 / 7.0);

  BindingWindow w;
  w.delta_E = [lo1, up1](double n) {
    const double lower = std::sqrt(n) * lo1 - n * up1;
    const double upper = std::pow(n, 5.0 / 7.0) * up1 - n * lo1;
    return std::make_pair(lower, upper);
  };
  w.N_crossover = std::pow(c2 / c1, 3.5) * std::pow(alpha, -0.75) * std::pow(lambda_uv, 0.75);
  w.note = "boson upper bound uses N^{5/7}; the binding display prints N^{2/7}";

  auto binds = [&](long long n) { return w.delta_E(double(n)).second < 0.0; };
  long long hi = 1;
  while (!binds(hi)) {
    if (hi > (1LL << 60)) fail(ErrorCode::Numerical, "binding search overflow");
    hi *= 2;
  }
  long long lo = hi / 2;  // lo does not bind (or is 0)
  if (hi == 1) lo = 0;
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (binds(mid) ? hi : lo) = mid;
  }
  w.N_star = hi;
  return w;
}

PerParticleMin per_particle_min(double c_kin, double c_field) {
  if (!(c_kin > 0.0) || !finite(c_kin)) fail(ErrorCode::InvalidInput, "c_kin must be > 0");
  if (!(c_field >= 0.0) || !finite(c_field)) fail(ErrorCode::InvalidInput, "c_field must be >= 0");
  auto f = [&](double n) { return c_kin * std::cbrt(n * n) + c_field / std::sqrt(n + 1.0); };

  // f' = 0 where n^{-1/3} (n+1)^{3/2} = 3 c_field / (4 c_kin). The left side
  // has its minimum at n = 2/7; the larger root is the interior minimizer.
  const double ratio = 0.75 * c_field / c_kin;
  auto lhs = [](double n) { return std::pow(n, -1.0 / 3.0) * std::pow(n + 1.0, 1.5); };
  double n2 = 0.0;
  const double n0 = 2.0 / 7.0;
  if (ratio > lhs(n0)) {
    double a = n0, b = 1.0;
    while (lhs(b) < ratio) b *= 2.0;
    for (int i = 0; i < 200 && b - a > 1e-9 * b; ++i) {
      const double m = 0.5 * (a + b);
      (lhs(m) < ratio ? a : b) = m;
    }
    n2 = b;
  }

  PerParticleMin best{0, f(0.0)};
  auto consider = [&](long long n) {
    if (n < 0) return;
    const double v = f(double(n));
    if (v < best.value) best = {n, v};
  };
  const long long top = static_cast<long long>(std::ceil(n2)) + 2;
  if (top <= 1'000'000) {
    for (long long n = 1; n <= top; ++n) consider(n);
  } else {
    const long long c = static_cast<long long>(std::floor(n2));
    for (long long n = c - 2; n <= c + 3; ++n) consider(n);
  }
  return best;
}

}  // namespace qb
