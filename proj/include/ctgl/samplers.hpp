#pragma once

#include "ctgl/hazard.hpp"
#include "ctgl/rng.hpp"

#include <cstdint>
#include <functional>
#include <limits>

namespace ctgl {

// G(xi): the wait time whose defective CDF equals xi, i.e. the smallest t
// with F(t) = xi, or +inf when xi >= lim F. Closed forms where the hazard
// integrates in elementary functions, bisection on Lambda otherwise.
ExtendedTime inverse_cdf(const WaitTimeLaw& law, double xi);

// Monotone bisection for Lambda(t) = -ln(1 - xi): the upper bracket doubles
// from 1, then up to 200 halvings (stopping early once the bracket no
// longer shrinks in floating point). `hazard` must be non-decreasing with
// hazard(0) = 0; `total` is its limit at infinity.
ExtendedTime inverse_by_bisection(const std::function<double(double)>& hazard, double total,
                                  double xi);

// Inverse of the law by bisection on its cumulative hazard, skipping any
// closed form.
ExtendedTime inverse_cdf_numeric(const WaitTimeLaw& law, double xi);

// Consumes exactly one uniform from `rng`.
ExtendedTime sample_wait_time(const WaitTimeLaw& law, RngStream& rng);

inline constexpr std::uint64_t kGeometricNever = std::numeric_limits<std::uint64_t>::max();

// Geometric on {1, 2, ...}: P(T = k) = (1 - p)^{k-1} p, by inverse transform
// ceil(ln(1 - xi) / ln(1 - p)). Saturates at kGeometricNever - 1. Consumes
// exactly one uniform.
std::uint64_t sample_geometric(double p, RngStream& rng);

} // namespace ctgl
