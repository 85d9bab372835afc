#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qedbounds/bounds.hpp"

TEST_CASE("frozen upper-bound constant matches a fresh calibration") {
  const double c = qb::calibrate_c_nonrel_upper();
  CHECK(c == doctest::Approx(qb::kCalibratedCNonrelUpper).epsilon(1e-8));
}
