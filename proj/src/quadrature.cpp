#include "ctgl/quadrature.hpp"

#include "ctgl/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ctgl {

namespace {

struct Panel {
  double a, b;
  double fa, fm, fb;
  double whole;
  double tol;
  int depth;
};

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  std::vector<Panel> stack;
  stack.push_back({a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), opts.abs_tol, 0});

  double total = 0.0;
  std::size_t accepted = 0;
  // Explicit stack; panels are processed depth first, left before right.
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + mid), rm = 0.5 * (mid + p.b);
    const double flm = f(lm), frm = f(rm);
    const double h = p.b - p.a;
    const double left = h / 12.0 * (p.fa + 4.0 * flm + p.fm);
    const double right = h / 12.0 * (p.fm + 4.0 * frm + p.fb);
    const double diff = left + right - p.whole;
    if (!std::isfinite(diff)) throw NumericError("quadrature: integrand is not finite");
    // Tolerances below the rounding floor of the panel sum are unreachable.
    const double floor_tol = 16.0 * std::numeric_limits<double>::epsilon() *
                             (std::abs(left) + std::abs(right));
    const double tol = std::max(p.tol, floor_tol);
    if (std::abs(diff) <= 15.0 * tol || p.depth >= opts.max_depth || mid <= p.a ||
        mid >= p.b) {
      if (p.depth >= opts.max_depth && std::abs(diff) > 15.0 * tol) {
        throw NumericError("quadrature: maximum recursion depth reached");
      }
      total += left + right + diff / 15.0;
      if (++accepted > opts.max_intervals) {
        throw NumericError("quadrature: subinterval budget exhausted");
      }
      continue;
    }
    stack.push_back({mid, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
    stack.push_back({p.a, mid, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
  }
  return sign * total;
}

} // namespace ctgl
