#include "ctgl/hazard.hpp"

#include "ctgl/death.hpp"
#include "ctgl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ctgl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b) without overflow.
double log_add_exp(double a, double b) {
  const double hi = std::max(a, b), lo = std::min(a, b);
  if (lo == -kInf) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

// The floor-split fixture below u = 1 is exponential decay with mu = 1.
WaitTimeLaw effective(const WaitTimeLaw& law) {
  if (law.decay.kind() == DecayKind::FloorSplit && law.u0 < 1.0) {
    return {law.phi, DecayLaw::power_law(1.0, 1.0), law.u0};
  }
  return law;
}

ClosedForm branch_of(const WaitTimeLaw& law) {
  if (law.decay.kind() != DecayKind::PowerLaw) return ClosedForm::None;
  const auto fam = law.phi.family();
  const int r = law.phi.r();
  if (law.decay.is_exponential()) {
    if (fam == PotentialFamily::Rational) return ClosedForm::ExpDecayRational;
    if (fam == PotentialFamily::Monomial) return ClosedForm::ExpDecayMonomial;
  } else if (law.decay.is_reciprocal()) {
    if (fam == PotentialFamily::Rational && r == 1) return ClosedForm::ReciprocalRational1;
    if (fam == PotentialFamily::Rational && r == 2) return ClosedForm::ReciprocalRational2;
    if (fam == PotentialFamily::Monomial && r == 1) return ClosedForm::ReciprocalMonomial1;
    if (fam == PotentialFamily::Monomial) return ClosedForm::ReciprocalMonomialHigh;
  }
  return ClosedForm::None;
}

double closed_form_hazard(ClosedForm c, const WaitTimeLaw& law, double t) {
  const double beta = law.phi.beta(), mu = law.decay.mu(), v0 = law.u0;
  const double r = static_cast<double>(law.phi.r());
  switch (c) {
  case ClosedForm::ExpDecayRational: {
    // (1/(r mu)) ln((v0^r + beta) / (v0^r e^{-r mu t} + beta)), in log space.
    const double a = r * std::log(v0), b = std::log(beta);
    if (std::isinf(t)) return (log_add_exp(a, b) - b) / (r * mu);
    return (log_add_exp(a, b) - log_add_exp(a - r * mu * t, b)) / (r * mu);
  }
  case ClosedForm::ExpDecayMonomial: {
    const double scale = beta * std::pow(v0, r) / (r * mu);
    if (std::isinf(t)) return scale;
    return scale * -std::expm1(-r * mu * t);
  }
  case ClosedForm::ReciprocalRational1:
    // (1/(beta mu)) ln(v0 (V + beta) / (V (v0 + beta))) with 1/V = mu t + 1/v0.
    if (std::isinf(t)) return kInf;
    return std::log1p(beta * mu * t / (1.0 + beta / v0)) / (beta * mu);
  case ClosedForm::ReciprocalRational2: {
    const double sb = std::sqrt(beta);
    const double top = std::atan(v0 / sb);
    if (std::isinf(t)) return top / (sb * mu);
    const double v = law.decay(v0, t);
    return (top - std::atan(v / sb)) / (sb * mu);
  }
  case ClosedForm::ReciprocalMonomial1:
    if (std::isinf(t)) return kInf;
    return beta / mu * std::log1p(v0 * mu * t);
  case ClosedForm::ReciprocalMonomialHigh: {
    const double scale = beta / ((r - 1.0) * mu);
    const double top = std::pow(v0, r - 1.0);
    if (std::isinf(t)) return scale * top;
    return scale * (top - std::pow(law.decay(v0, t), r - 1.0));
  }
  case ClosedForm::None:
    break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool finite_total(const WaitTimeLaw& law) {
  return classify_neuron(law.phi, law.decay).cls == HazardClass::S;
}

// (1/mu) int_0^{u0} phi(v) v^{-gamma} dv for an S-class power-law neuron.
// Substituting v = u0 x^k with k(d + 1 - gamma) = 2 turns the integrable
// singularity at v = 0 into an integrand that vanishes linearly at x = 0.
double total_hazard_by_quadrature(const WaitTimeLaw& law) {
  const double gamma = law.decay.gamma();
  const double d = static_cast<double>(zero_order(law.phi));
  const double k = std::max(1.0, 2.0 / (d + 1.0 - gamma));
  const double u0 = law.u0;
  auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    const double v = u0 * std::pow(x, k);
    return law.phi.over_power(v, gamma) * u0 * k * std::pow(x, k - 1.0);
  };
  return adaptive_simpson(integrand, 0.0, 1.0, {.abs_tol = 1e-12}) / law.decay.mu();
}

} // namespace

const char* to_string(ClosedForm c) {
  switch (c) {
  case ClosedForm::None: return "none";
  case ClosedForm::ExpDecayRational: return "exp-decay/rational";
  case ClosedForm::ExpDecayMonomial: return "exp-decay/monomial";
  case ClosedForm::ReciprocalRational1: return "reciprocal-decay/rational r=1";
  case ClosedForm::ReciprocalRational2: return "reciprocal-decay/rational r=2";
  case ClosedForm::ReciprocalMonomial1: return "reciprocal-decay/monomial r=1";
  case ClosedForm::ReciprocalMonomialHigh: return "reciprocal-decay/monomial r>=2";
  }
  return "unknown";
}

ClosedForm closed_form_of(const WaitTimeLaw& law) { return branch_of(effective(law)); }

double cumulative_hazard(const WaitTimeLaw& law_in, double t) {
  if (!(t >= 0.0)) throw DomainError("cumulative hazard at negative time");
  if (!(law_in.u0 >= 0.0)) throw DomainError("negative starting potential");
  if (law_in.u0 == 0.0 || t == 0.0) return 0.0;
  if (std::isinf(t)) return total_hazard(law_in);
  const WaitTimeLaw law = effective(law_in);
  if (const ClosedForm c = branch_of(law); c != ClosedForm::None) {
    return closed_form_hazard(c, law, t);
  }
  if (law.decay.kind() == DecayKind::PowerLaw) return cumulative_hazard_by_potential(law, t);
  return cumulative_hazard_numeric(law, t);
}

double cumulative_hazard_numeric(const WaitTimeLaw& law, double t, double tol) {
  if (!(t >= 0.0) || std::isinf(t)) throw DomainError("numeric hazard needs finite t >= 0");
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (law.u0 == 0.0 || t == 0.0) return 0.0;
  auto rate = [&](double s) { return law.phi(law.decay(law.u0, s)); };
  return adaptive_simpson(rate, 0.0, t, {.abs_tol = tol});
}

double cumulative_hazard_by_potential(const WaitTimeLaw& law, double t, double tol) {
  if (law.decay.kind() != DecayKind::PowerLaw) {
    throw DomainError("potential-domain quadrature needs a power-law decay");
  }
  if (!(t >= 0.0)) throw DomainError("cumulative hazard at negative time");
  if (law.u0 == 0.0 || t == 0.0) return 0.0;
  const double v_end = law.decay(law.u0, t);
  if (std::isinf(t) || v_end <= 0.0) {
    // V(t) underflowed: only possible when the total hazard is finite.
    return total_hazard(law);
  }
  const double gamma = law.decay.gamma();
  auto integrand = [&](double w) {
    return law.phi.over_power(std::exp(w), gamma - 1.0);
  };
  return adaptive_simpson(integrand, std::log(v_end), std::log(law.u0), {.abs_tol = tol}) /
         law.decay.mu();
}

double total_hazard(const WaitTimeLaw& law_in) {
  if (law_in.u0 == 0.0) return 0.0;
  const WaitTimeLaw law = effective(law_in);
  if (law.decay.kind() == DecayKind::FloorSplit) {
    // Started at u0 >= 1: the rate stays above phi(floor(u0)) > 0.
    return kInf;
  }
  if (const ClosedForm c = branch_of(law); c != ClosedForm::None) {
    return closed_form_hazard(c, law, kInf);
  }
  if (!finite_total(law)) return kInf;
  return total_hazard_by_quadrature(law);
}

double cdf(const WaitTimeLaw& law, ExtendedTime t) {
  if (t.is_infinite()) return 1.0;
  return -std::expm1(-cumulative_hazard(law, t.value()));
}

double defect_threshold(const WaitTimeLaw& law) {
  const double total = total_hazard(law);
  return std::isinf(total) ? 1.0 : -std::expm1(-total);
}

double atom_at_infinity(const WaitTimeLaw& law) { return std::exp(-total_hazard(law)); }

} // namespace ctgl
