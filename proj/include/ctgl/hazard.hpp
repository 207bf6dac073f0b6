#pragma once

#include "ctgl/model.hpp"

namespace ctgl {

// Law of one neuron's wait time until its next discharge, when it starts
// the waiting period at potential u0 and nobody else fires meanwhile.
// The hazard is lambda(s) = phi(V(u0, s)); the cumulative hazard is
// Lambda(t) = int_0^t lambda, and P(T <= t) = 1 - exp(-Lambda(t)).
// When Lambda(inf) is finite the law is defective: P(T = inf) = exp(-Lambda(inf)).
struct WaitTimeLaw {
  PotentialFn phi;
  DecayLaw decay;
  double u0 = 0.0;
};

// Parametric cases with an antiderivative in elementary functions.
enum class ClosedForm {
  None,
  ExpDecayRational,       // gamma = 1, rational phi, any r
  ExpDecayMonomial,       // gamma = 1, monomial phi, any r
  ReciprocalRational1,    // gamma = 2, rational phi, r = 1
  ReciprocalRational2,    // gamma = 2, rational phi, r = 2
  ReciprocalMonomial1,    // gamma = 2, monomial phi, r = 1
  ReciprocalMonomialHigh, // gamma = 2, monomial phi, r >= 2
};

const char* to_string(ClosedForm c);

// Branch used for `law`. The floor-split fixture started below 1 behaves
// exactly like exponential decay with mu = 1 and reports that branch.
ClosedForm closed_form_of(const WaitTimeLaw& law);

// Lambda(t). Closed form where available, otherwise quadrature in the
// potential variable. t may be +inf.
double cumulative_hazard(const WaitTimeLaw& law, double t);

// Lambda(t) by adaptive Simpson over s in [0, t] of phi(V(u0, s)). This
// integrates in time and shares no code path with cumulative_hazard, so it
// serves as the oracle for the closed forms.
double cumulative_hazard_numeric(const WaitTimeLaw& law, double t, double tol = 1e-9);

// Lambda(t) by quadrature in the potential variable,
//   (1/mu) int_{V(t)}^{u0} phi(v) v^{-gamma} dv,
// taken over log(v) so long waits stay cheap. Power-law decays only.
double cumulative_hazard_by_potential(const WaitTimeLaw& law, double t, double tol = 1e-11);

// Lambda(inf), possibly +inf. Finiteness is decided from the order of the
// zero of phi at 0 and never by truncated quadrature.
double total_hazard(const WaitTimeLaw& law);

// F(t) = 1 - exp(-Lambda(t)); F(+inf) = 1.
double cdf(const WaitTimeLaw& law, ExtendedTime t);

// lim_{t -> inf} F(t) = 1 - exp(-Lambda(inf)).
double defect_threshold(const WaitTimeLaw& law);

// exp(-Lambda(inf)); 0 when Lambda(inf) is infinite.
double atom_at_infinity(const WaitTimeLaw& law);

} // namespace ctgl
