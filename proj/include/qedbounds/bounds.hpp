#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qedbounds/lattice.hpp"
#include "qedbounds/records.hpp"

namespace qb {

enum class Provenance { Explicit, Calibrated, User };
const char* to_string(Provenance p);

struct ConstantEntry {
  double value = 0.0;
  Provenance provenance = Provenance::User;
  std::string note;
};

// Named bound constants. Unknown names and nonpositive values are
// configuration errors.
class ConstantsSet {
 public:
  static ConstantsSet defaults();
  static const std::vector<std::string>& known_names();
  static bool is_known(const std::string& name);

  void set(const std::string& name, double value, Provenance p = Provenance::User,
           const std::string& note = {});
  bool has(const std::string& name) const { return entries_.count(name) != 0; }
  double get(const std::string& name) const;
  const ConstantEntry& entry(const std::string& name) const;
  const std::map<std::string, ConstantEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, ConstantEntry> entries_;
};

// Frozen result of calibrate_c_nonrel_upper() at the default reference.
inline constexpr double kCalibratedCNonrelUpper = 0.4739282245;
// The coupling is large enough that the optimal profile is localized (K*
// interior to its bracket); at alpha = 1 the search is pinned to the
// constant profile and the ratio carries no information about the exponent.
struct CalibrationReference {
  double alpha = 100.0;
  double lambda_uv = 10.0;
  double lattice_ratio = 10.0;  // Lambda L / 2 pi
};
// C2 = optimize_K energy / (alpha^{2/7} Lambda^{12/7}) at the reference.
double calibrate_c_nonrel_upper(const CalibrationReference& ref = {});

// sqrt(alpha / 4 pi) Lambda, scaled by c_rel_upper.
BoundRecord rel_upper(double alpha, double lambda_uv,
                      const ConstantsSet& constants = ConstantsSet::defaults());

struct KEll {
  double K_value = 1.0;
  double K_single_integral_bound = 1.0;
  double error_estimate = 0.0;
};

// Si2(u) = int_0^u (sin t / t)^2 dt, tabulated on [0, u_max].
class SineSquaredIntegral {
 public:
  explicit SineSquaredIntegral(double u_max, double step = 0.5);
  double operator()(double u) const;

 private:
  double h_;
  std::vector<double> cum_;
};
double sinc2(double t);

KEll k_ell(double alpha, double ell, double tol = 1e-9);

struct RelLowerOptions {
  int grid_points = 40;
  double tol = 1e-9;
};
// Lambda * max_ell u(ell); aux ell_star. Root residual checked to 1e-10.
BoundRecord rel_lower(double alpha, double lambda_uv, const RelLowerOptions& opts = {});
// Smaller root of (1/ell - u)(1/2 - u) = sqrt(K)/(2 ell).
double rel_lower_root(double ell, double K);

// f_lambda(k, x) on the shell Lambda/2 < |k| < Lambda of a 3-D lattice, with x
// along axis 1 and x_perp = 0. The alpha/(2V) prefactor is applied by the
// overlap exponent, not stored here.
struct CoherentShift {
  double x = 0.0;
  std::vector<std::size_t> modes;                 // lattice mode indices in the shell
  std::vector<std::array<std::complex<double>, 2>> f;  // per shell mode, per polarization
};
CoherentShift coherent_shift(const ModeLattice& lattice, double x);

struct OverlapResult {
  double value = 0.0;
  bool degenerate = false;
};
// (alpha / 2V) sum_{shell, lambda} |f(k, x) - f(k, y)|^2.
OverlapResult overlap_exponent_lattice(double alpha, double ell, double x, double y,
                                       const ModeLattice& lattice);

struct BoundPair {
  BoundRecord lower;
  BoundRecord upper;
};
BoundPair nonrel_theorem_bounds(int N, double alpha, double lambda_uv,
                                const ConstantsSet& constants, Statistics statistics);

std::vector<BoundRecord> pauli_bounds(double alpha, double lambda_uv, int N,
                                      const ConstantsSet& constants);
std::vector<BoundRecord> rel_fermion_bounds(int N, double alpha, double lambda_uv,
                                            const ConstantsSet& constants);

struct BindingWindow {
  long long N_star = 0;
  double N_crossover = 0.0;  // (C2/C1)^{7/2} alpha^{-3/4} Lambda^{3/4}
  std::function<std::pair<double, double>(double)> delta_E;  // N -> (lower, upper)
  std::string note;
};
BindingWindow binding_window(double alpha, double lambda_uv, const ConstantsSet& constants);

struct PerParticleMin {
  long long n_star = 0;
  double value = 0.0;
};
PerParticleMin per_particle_min(double c_kin, double c_field);

}  // namespace qb
