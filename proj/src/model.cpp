#include "ctgl/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace ctgl {

namespace {

void require_positive_finite(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    std::ostringstream os;
    os << what << " must be a positive finite number, got " << v;
    throw ConfigError(os.str());
  }
}

} // namespace

PotentialFn::PotentialFn(PotentialFamily f, int r, double beta)
    : family_(f), r_(r), beta_(beta) {
  require_positive_finite(beta, "phi.beta");
  if (r < 1) throw ConfigError("phi.r must be a positive integer");
}

PotentialFn PotentialFn::exponential(double beta) {
  return PotentialFn(PotentialFamily::Exponential, 1, beta);
}
PotentialFn PotentialFn::rational(int r, double beta) {
  return PotentialFn(PotentialFamily::Rational, r, beta);
}
PotentialFn PotentialFn::monomial(int r, double beta) {
  return PotentialFn(PotentialFamily::Monomial, r, beta);
}

double PotentialFn::operator()(double u) const {
  if (!(u >= 0.0)) throw DomainError("phi evaluated at a negative potential");
  switch (family_) {
  case PotentialFamily::Exponential:
    return -std::expm1(-beta_ * u);
  case PotentialFamily::Rational: {
    if (std::isinf(u)) return 1.0;
    const double ur = std::pow(u, r_);
    if (std::isinf(ur)) return 1.0;
    return ur / (ur + beta_);
  }
  case PotentialFamily::Monomial:
    return beta_ * std::pow(u, r_);
  }
  return 0.0;
}

double PotentialFn::over_power(double v, double gamma) const {
  if (v <= 0.0) return 0.0;
  const double r = static_cast<double>(r_);
  switch (family_) {
  case PotentialFamily::Exponential:
    // (1 - e^{-beta v}) / v is bounded by beta near 0.
    return (-std::expm1(-beta_ * v) / v) * std::pow(v, 1.0 - gamma);
  case PotentialFamily::Rational: {
    const double ur = std::pow(v, r);
    if (std::isinf(ur)) return std::pow(v, -gamma);
    return std::pow(v, r - gamma) / (ur + beta_);
  }
  case PotentialFamily::Monomial:
    return beta_ * std::pow(v, r - gamma);
  }
  return 0.0;
}

std::string to_string(PotentialFamily f) {
  switch (f) {
  case PotentialFamily::Exponential: return "exponential";
  case PotentialFamily::Rational: return "rational";
  case PotentialFamily::Monomial: return "monomial";
  }
  return "unknown";
}

double eval_phi(const PotentialFn& phi, double u) { return phi(u); }

DecayLaw::DecayLaw(DecayKind k, double gamma, double mu)
    : kind_(k), gamma_(gamma), mu_(mu) {
  if (!std::isfinite(gamma) || gamma < 1.0) {
    std::ostringstream os;
    os << "decay.gamma must be a finite number >= 1, got " << gamma;
    throw ConfigError(os.str());
  }
  require_positive_finite(mu, "decay.mu");
}

DecayLaw DecayLaw::power_law(double gamma, double mu) {
  return DecayLaw(DecayKind::PowerLaw, gamma, mu);
}

DecayLaw DecayLaw::floor_split() { return DecayLaw(DecayKind::FloorSplit, 1.0, 1.0); }

double DecayLaw::operator()(double u, double t) const {
  if (!(u >= 0.0) || !(t >= 0.0)) {
    throw DomainError("decay evaluated at a negative potential or time");
  }
  if (u == 0.0 || t == 0.0) return u;
  if (kind_ == DecayKind::FloorSplit) {
    const double whole = std::floor(u);
    return (u - whole) * std::exp(-t) + whole;
  }
  if (gamma_ == 1.0) return u * std::exp(-mu_ * t);
  if (gamma_ == 2.0) return 1.0 / (mu_ * t + 1.0 / u);
  const double e = 1.0 - gamma_;
  return std::pow(std::pow(u, e) - e * mu_ * t, 1.0 / e);
}

double decay_value(const DecayLaw& law, double u, double t) { return law(u, t); }

NetworkConfig::NetworkConfig(std::vector<Neuron> neurons, std::vector<double> weights)
    : neurons_(std::move(neurons)), weights_(std::move(weights)) {
  const std::size_t n = neurons_.size();
  if (n == 0) throw ConfigError("network must contain at least one neuron");
  if (weights_.size() != n * n) {
    std::ostringstream os;
    os << "weights must be a " << n << "x" << n << " matrix, got " << weights_.size()
       << " entries";
    throw ConfigError(os.str());
  }
  std::sort(neurons_.begin(), neurons_.end(),
            [](const Neuron& a, const Neuron& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < n; ++i) {
    if (neurons_[i].id != i) {
      throw ConfigError("neuron ids must be exactly 0..N-1");
    }
  }
}

std::vector<double> NetworkConfig::initial_potentials() const {
  std::vector<double> a(neurons_.size());
  std::transform(neurons_.begin(), neurons_.end(), a.begin(),
                 [](const Neuron& x) { return x.initial_potential; });
  return a;
}

DeathHypotheses check_death_hypotheses(const NetworkConfig& cfg) {
  DeathHypotheses h;
  const auto n = static_cast<NeuronId>(cfg.size());
  for (NeuronId i = 0; i < n; ++i) {
    for (NeuronId j = 0; j < n; ++j) {
      if (i != j && cfg.weight(i, j) < 0.0) {
        h.nonnegative_weights = false;
        std::ostringstream os;
        os << "negative weight W[" << i << "->" << j << "] = " << cfg.weight(i, j);
        h.violations.push_back(os.str());
      }
    }
  }
  for (const auto& nr : cfg.neurons()) {
    if (!(nr.initial_potential > 0.0)) {
      h.positive_initial_potentials = false;
      h.violations.push_back("initial potential of neuron " + std::to_string(nr.id) +
                             " is not positive");
    }
    // Every supported phi family vanishes exactly at 0, so that hypothesis
    // always holds. Power-law decays tend to 0 from every u; the floor-split
    // fixture keeps floor(u) forever and breaks the single-limit-regime rule.
    if (nr.decay.kind() == DecayKind::FloorSplit) {
      h.decay_limit_regimen = false;
      h.violations.push_back("decay of neuron " + std::to_string(nr.id) +
                             " has more than one limit regime");
    }
  }
  return h;
}

ValidationReport validate_config(const NetworkConfig& cfg) {
  for (const auto& nr : cfg.neurons()) {
    const std::string where = "neurons[" + std::to_string(nr.id) + "]";
    if (!std::isfinite(nr.initial_potential)) {
      throw ConfigError(where + ".initial_potential is not finite");
    }
    if (nr.initial_potential < 0.0) {
      throw ConfigError(where + ".initial_potential is negative");
    }
  }
  for (double w : cfg.weights()) {
    if (!std::isfinite(w)) throw ConfigError("weights contain a non-finite entry");
  }

  ValidationReport report;
  constexpr std::array<double, 9> us{0.0, 0.1, 0.5, 0.99, 1.0, 2.5, 5.0, 10.0, 100.0};
  constexpr std::array<double, 7> ts{0.0, 0.01, 0.1, 1.0, 2.0, 5.0, 50.0};
  constexpr double tol = 1e-9;

  auto fail = [&](const Neuron& nr, const std::string& what) {
    report.axioms_ok = false;
    report.axiom_failures.push_back("neuron " + std::to_string(nr.id) + ": " + what);
  };

  for (const auto& nr : cfg.neurons()) {
    const DecayLaw& v = nr.decay;
    bool identity = true, mono_u = true, mono_t = true, semigroup = true, mono_phi = true;
    for (double u : us) {
      if (v(u, 0.0) != u) identity = false;
    }
    for (double t : ts) {
      for (std::size_t k = 1; k < us.size(); ++k) {
        if (v(us[k - 1], t) > v(us[k], t)) mono_u = false;
      }
    }
    for (double u : us) {
      for (std::size_t k = 1; k < ts.size(); ++k) {
        if (v(u, ts[k]) > v(u, ts[k - 1])) mono_t = false;
      }
      for (double t : ts) {
        for (double t2 : ts) {
          if (std::abs(v(u, t + t2) - v(v(u, t), t2)) > tol) semigroup = false;
        }
      }
    }
    for (std::size_t k = 1; k < us.size(); ++k) {
      if (nr.phi(us[k - 1]) > nr.phi(us[k])) mono_phi = false;
    }
    if (!identity) fail(nr, "decay is not the identity at t = 0");
    if (!mono_u) fail(nr, "decay is not non-decreasing in the potential");
    if (!mono_t) fail(nr, "decay is not non-increasing in time");
    if (!semigroup) fail(nr, "decay violates V(u, t + t') = V(V(u, t), t')");
    if (!mono_phi) fail(nr, "phi is not non-decreasing");
  }
  report.hypotheses = check_death_hypotheses(cfg);
  return report;
}

} // namespace ctgl
