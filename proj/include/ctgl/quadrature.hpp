#pragma once

#include <cstddef>
#include <functional>

namespace ctgl {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  std::size_t max_intervals = 1'000'000;
  int max_depth = 60;
};

// Adaptive Simpson quadrature with interval bisection. The tolerance is
// split between the two halves at every level; a subinterval is accepted
// once |S(left) + S(right) - S(whole)| <= 15 tol (Richardson-corrected).
// Throws NumericError when the interval budget or depth is exhausted.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts = {});

} // namespace ctgl
