#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctgl {

// Error taxonomy. ConfigError maps to CLI exit code 2, NumericError to 3.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using NeuronId = std::uint32_t;

// Nonnegative time that may take the value +infinity (a neuron that never
// fires again). Stored as a plain double; +inf is the IEEE infinity.
class ExtendedTime {
public:
  constexpr ExtendedTime() = default;
  constexpr explicit ExtendedTime(double v) : value_(v) {}

  static constexpr ExtendedTime infinity() {
    return ExtendedTime(std::numeric_limits<double>::infinity());
  }

  [[nodiscard]] constexpr double value() const { return value_; }
  [[nodiscard]] constexpr bool is_infinite() const {
    return value_ == std::numeric_limits<double>::infinity();
  }
  [[nodiscard]] constexpr bool is_finite() const { return !is_infinite(); }

  friend constexpr auto operator<=>(ExtendedTime, ExtendedTime) = default;

private:
  double value_ = 0.0;
};

enum class PotentialFamily { Exponential, Rational, Monomial };

// Potential-to-intensity map phi. All three families vanish exactly at 0
// and are non-decreasing on [0, inf).
//   Exponential: 1 - exp(-beta u)
//   Rational:    u^r / (u^r + beta)
//   Monomial:    beta u^r           (unbounded; fine as a hazard intensity)
class PotentialFn {
public:
  static PotentialFn exponential(double beta);
  static PotentialFn rational(int r, double beta);
  static PotentialFn monomial(int r, double beta);

  [[nodiscard]] PotentialFamily family() const { return family_; }
  // 1 for Exponential.
  [[nodiscard]] int r() const { return r_; }
  [[nodiscard]] double beta() const { return beta_; }

  [[nodiscard]] double operator()(double u) const;

  // phi(v) * v^(-gamma), evaluated without forming the two factors
  // separately so that tiny v neither underflows nor produces 0 * inf.
  [[nodiscard]] double over_power(double v, double gamma) const;

  [[nodiscard]] bool bounded_by_one() const {
    return family_ != PotentialFamily::Monomial;
  }

  friend bool operator==(const PotentialFn&, const PotentialFn&) = default;

private:
  PotentialFn(PotentialFamily f, int r, double beta);

  PotentialFamily family_ = PotentialFamily::Exponential;
  int r_ = 1;
  double beta_ = 1.0;
};

std::string to_string(PotentialFamily f);

double eval_phi(const PotentialFn& phi, double u);

enum class DecayKind {
  PowerLaw,   // solutions of V' = -mu V^gamma
  FloorSplit, // (u - floor(u)) e^{-t} + floor(u): test fixture with two limit regimes
};

class DecayLaw {
public:
  static DecayLaw power_law(double gamma, double mu);
  static DecayLaw floor_split();

  [[nodiscard]] DecayKind kind() const { return kind_; }
  [[nodiscard]] double gamma() const { return gamma_; }
  [[nodiscard]] double mu() const { return mu_; }

  [[nodiscard]] bool is_exponential() const {
    return kind_ == DecayKind::PowerLaw && gamma_ == 1.0;
  }
  [[nodiscard]] bool is_reciprocal() const {
    return kind_ == DecayKind::PowerLaw && gamma_ == 2.0;
  }

  [[nodiscard]] double operator()(double u, double t) const;

  friend bool operator==(const DecayLaw&, const DecayLaw&) = default;

private:
  DecayLaw(DecayKind k, double gamma, double mu);

  DecayKind kind_ = DecayKind::PowerLaw;
  double gamma_ = 1.0;
  double mu_ = 1.0;
};

double decay_value(const DecayLaw& law, double u, double t);

struct Neuron {
  NeuronId id = 0;
  PotentialFn phi = PotentialFn::exponential(1.0);
  DecayLaw decay = DecayLaw::power_law(1.0, 1.0);
  double initial_potential = 0.0;
};

// Weights are row-major: weight(i, j) is the influence of a discharge of
// neuron i on neuron j. Diagonal entries never affect the dynamics.
class NetworkConfig {
public:
  NetworkConfig(std::vector<Neuron> neurons, std::vector<double> weights);

  [[nodiscard]] std::size_t size() const { return neurons_.size(); }
  [[nodiscard]] const std::vector<Neuron>& neurons() const { return neurons_; }
  [[nodiscard]] const Neuron& neuron(NeuronId i) const { return neurons_.at(i); }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] double weight(NeuronId from, NeuronId to) const {
    return weights_[static_cast<std::size_t>(from) * size() + to];
  }
  [[nodiscard]] std::vector<double> initial_potentials() const;

private:
  std::vector<Neuron> neurons_;
  std::vector<double> weights_;
};

struct DeathHypotheses {
  bool nonnegative_weights = true;
  bool positive_initial_potentials = true;
  bool phi_vanishes_only_at_zero = true;
  bool decay_limit_regimen = true;
  std::vector<std::string> violations;

  [[nodiscard]] bool all_ok() const { return violations.empty(); }
};

struct ValidationReport {
  bool axioms_ok = true;
  std::vector<std::string> axiom_failures;
  DeathHypotheses hypotheses;
};

// Checks the decay/potential axioms on a fixed sample grid and records
// whether the death-theorem hypotheses hold. Throws ConfigError for
// non-finite parameters or negative initial potentials.
ValidationReport validate_config(const NetworkConfig& cfg);

DeathHypotheses check_death_hypotheses(const NetworkConfig& cfg);

} // namespace ctgl
