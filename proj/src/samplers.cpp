#include "ctgl/samplers.hpp"

#include <algorithm>
#include <cmath>

namespace ctgl {

namespace {

void check_xi(double xi) {
  if (!(xi >= 0.0 && xi < 1.0)) throw DomainError("uniform variate outside [0, 1)");
}

// Closed-form G for the branches of ClosedForm; `target` = -ln(1 - xi) and
// is strictly below the total hazard.
double closed_form_inverse(ClosedForm c, const WaitTimeLaw& law, double target) {
  const double beta = law.phi.beta(), mu = law.decay.mu(), v0 = law.u0;
  const double r = static_cast<double>(law.phi.r());
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (c) {
  case ClosedForm::ExpDecayRational: {
    // (V/v0)^r = (1 + q)(1 - xi)^{r mu} - q with q = beta / v0^r.
    const double q = std::exp(std::log(beta) - r * std::log(v0));
    const double shrink = std::exp(-r * mu * target);
    const double ratio = shrink - q * -std::expm1(-r * mu * target);
    if (!(ratio > 0.0)) return inf;
    return -std::log(ratio) / (r * mu);
  }
  case ClosedForm::ExpDecayMonomial: {
    // The argument of the logarithm is 1 + r mu ln(1 - xi) / (beta v0^r).
    const double c0 = r * mu * target / (beta * std::pow(v0, r));
    if (!(c0 < 1.0)) return inf;
    return -std::log1p(-c0) / (mu * r);
  }
  case ClosedForm::ReciprocalRational1:
    return std::expm1(beta * mu * target) / mu * (1.0 / v0 + 1.0 / beta);
  case ClosedForm::ReciprocalRational2: {
    // t = (cot(theta) - cot(theta0)) / (sqrt(beta) mu), theta = theta0 - delta.
    // The sine form avoids cancelling the two cotangents for small delta.
    const double sb = std::sqrt(beta);
    const double theta0 = std::atan(v0 / sb);
    const double delta = sb * mu * target;
    const double theta = theta0 - delta;
    if (!(theta > 0.0)) return inf;
    return std::sin(delta) / (std::sin(theta) * std::sin(theta0) * sb * mu);
  }
  case ClosedForm::ReciprocalMonomial1:
    return std::expm1(mu * target / beta) / (mu * v0);
  case ClosedForm::ReciprocalMonomialHigh: {
    // Same hazard as exp-decay monomial of degree r - 1 in the potential
    // variable: V^{r-1} = v0^{r-1} (1 - c); then t = (1/V - 1/v0) / mu.
    const double c0 = (r - 1.0) * mu * target / (beta * std::pow(v0, r - 1.0));
    if (!(c0 < 1.0)) return inf;
    const double log_ratio = std::log1p(-c0) / (r - 1.0); // ln(V / v0)
    const double v = v0 * std::exp(log_ratio);
    return -std::expm1(log_ratio) / (v * mu);
  }
  case ClosedForm::None:
    break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

ExtendedTime inverse_by_bisection(const std::function<double(double)>& hazard, double total,
                                  double xi) {
  check_xi(xi);
  if (xi == 0.0) return ExtendedTime(0.0);
  const double target = -std::log1p(-xi);
  if (!(target < total)) return ExtendedTime::infinity();

  double lo = 0.0, hi = 1.0;
  while (hazard(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (std::isinf(hi)) throw NumericError("bisection: could not bracket the wait time");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hazard(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return ExtendedTime(0.5 * (lo + hi));
}

ExtendedTime inverse_cdf_numeric(const WaitTimeLaw& law, double xi) {
  check_xi(xi);
  if (law.u0 == 0.0) return ExtendedTime::infinity();
  const double total = total_hazard(law);
  if (law.decay.kind() == DecayKind::PowerLaw) {
    return inverse_by_bisection(
        [&](double t) { return cumulative_hazard_by_potential(law, t); }, total, xi);
  }
  return inverse_by_bisection([&](double t) { return cumulative_hazard_numeric(law, t); },
                              total, xi);
}

ExtendedTime inverse_cdf(const WaitTimeLaw& law, double xi) {
  check_xi(xi);
  if (law.u0 == 0.0) return ExtendedTime::infinity();
  if (xi == 0.0) return ExtendedTime(0.0);
  // The floor-split fixture below 1 reports an exp-decay branch; evaluate it
  // with the equivalent power law.
  const ClosedForm c = closed_form_of(law);
  if (c == ClosedForm::None) {
    const double total = total_hazard(law);
    return inverse_by_bisection([&](double t) { return cumulative_hazard(law, t); }, total,
                                xi);
  }
  const WaitTimeLaw eff = law.decay.kind() == DecayKind::FloorSplit
                              ? WaitTimeLaw{law.phi, DecayLaw::power_law(1.0, 1.0), law.u0}
                              : law;
  if (xi >= defect_threshold(eff)) return ExtendedTime::infinity();
  const double t = closed_form_inverse(c, eff, -std::log1p(-xi));
  return ExtendedTime(std::max(0.0, t));
}

ExtendedTime sample_wait_time(const WaitTimeLaw& law, RngStream& rng) {
  return inverse_cdf(law, rng.uniform());
}

std::uint64_t sample_geometric(double p, RngStream& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("geometric parameter outside (0, 1]");
  const double xi = rng.uniform();
  if (p == 1.0) return 1;
  const double k = std::ceil(std::log1p(-xi) / std::log1p(-p));
  constexpr double cap = 9.0e18;
  if (!(k < cap)) return kGeometricNever - 1;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

} // namespace ctgl
