#pragma once

#include <functional>
#include <vector>

namespace qb {

struct MinimizeResult {
  double x;
  double fx;
  int evaluations;
};

// Golden-section minimization on [a, b]; stops when the bracket width drops
// below rel_tol * |x|.
MinimizeResult golden_section(const std::function<double(double)>& f, double a,
                              double b, double rel_tol, int max_iter = 200);

// Bracket a minimum on a log grid of `points` nodes in [a, b] and refine the
// best interior cell by golden section. Endpoints are kept as candidates.
MinimizeResult scan_and_refine(const std::function<double(double)>& f, double a,
                               double b, int points, double rel_tol);

struct QuadResult {
  double value;
  double error;
  int intervals;
};

// Adaptive Gauss-Kronrod (7,15) integration with interval bisection.
// Throws a numerical-failure error when the interval budget is exhausted.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_intervals = 4000);

// Single 15-point Kronrod panel; returns value, fills `err` with |K15 - G7|.
double gk15_panel(const std::function<double(double)>& f, double a, double b,
                  double* err);

std::vector<double> log_space(double a, double b, int n);

}  // namespace qb
