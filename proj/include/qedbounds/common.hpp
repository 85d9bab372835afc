#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qb {

using Vec3 = std::array<double, 3>;
using IVec3 = std::array<int, 3>;

inline constexpr double kPi = std::numbers::pi;

enum class ErrorCode {
  InvalidInput = 1,
  Numerical = 2,
  Capacity = 3,
  Configuration = 4,
  Degenerate = 5,
  InsufficientData = 6,
};

const char* error_code_name(ErrorCode code);

// Library exception. `residual` carries the best achieved residual for
// numerical failures and is NaN otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        double residual = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), code_(code), residual_(residual) {}
  ErrorCode code() const noexcept { return code_; }
  double residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  double residual_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

inline bool finite(double x) { return std::isfinite(x); }

}  // namespace qb
