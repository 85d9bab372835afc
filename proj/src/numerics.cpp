#include "qedbounds/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "qedbounds/common.hpp"

namespace qb {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace

double gk15_panel(const std::function<double(double)>& f, double a, double b,
                  double* err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  if (err) *err = std::abs((k - g) * h);
  return k * h;
}

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_intervals) {
  struct Panel {
    double a, b, v, e;
    bool operator<(const Panel& o) const { return e < o.e; }
  };
  std::priority_queue<Panel> heap;
  double e0 = 0.0;
  double v0 = gk15_panel(f, a, b, &e0);
  heap.push({a, b, v0, e0});
  double err = e0;
  int n = 1;
  while (err > abs_tol) {
    if (n >= max_intervals)
      throw Error(ErrorCode::Numerical, "adaptive quadrature did not converge", err);
    Panel p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    double el = 0.0, er = 0.0;
    const double vl = gk15_panel(f, p.a, m, &el);
    const double vr = gk15_panel(f, m, p.b, &er);
    heap.push({p.a, m, vl, el});
    heap.push({m, p.b, vr, er});
    ++n;
    // running error estimate; values are resummed in a fixed order on exit
    err += el + er - p.e;
    if (err < 0) err = 0;
  }
  // resum panels left to right
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum sv, se;
  for (const auto& p : panels) {
    sv.add(p.v);
    se.add(p.e);
  }
  return {sv.value(), se.value(), n};
}

MinimizeResult golden_section(const std::function<double(double)>& f, double a,
                              double b, double rel_tol, int max_iter) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(b - a) <= rel_tol * std::max(std::abs(c), std::abs(d))) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  if (fc <= fd) return {c, fc, evals};
  return {d, fd, evals};
}

MinimizeResult scan_and_refine(const std::function<double(double)>& f, double a,
                               double b, int points, double rel_tol) {
  auto xs = log_space(a, b, points);
  std::vector<double> fs(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) fs[i] = f(xs[i]);
  size_t best = 0;
  for (size_t i = 1; i < xs.size(); ++i)
    if (fs[i] < fs[best]) best = i;
  int evals = static_cast<int>(xs.size());
  MinimizeResult out{xs[best], fs[best], evals};
  if (best > 0 && best + 1 < xs.size()) {
    auto r = golden_section(f, xs[best - 1], xs[best + 1], rel_tol);
    out.evaluations += r.evaluations;
    if (r.fx <= out.fx) {
      out.x = r.x;
      out.fx = r.fx;
    }
  } else if (best == 0 && xs.size() > 1) {
    auto r = golden_section(f, xs[0], xs[1], rel_tol);
    out.evaluations += r.evaluations;
    if (r.fx < out.fx) {
      out.x = r.x;
      out.fx = r.fx;
    }
  } else if (xs.size() > 1) {
    auto r = golden_section(f, xs[best - 1], xs[best], rel_tol);
    out.evaluations += r.evaluations;
    if (r.fx < out.fx) {
      out.x = r.x;
      out.fx = r.fx;
    }
  }
  return out;
}

std::vector<double> log_space(double a, double b, int n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) out[i] = std::exp(la + (lb - la) * i / (n - 1));
  out.front() = a;
  out.back() = b;
  return out;
}

}  // namespace qb
