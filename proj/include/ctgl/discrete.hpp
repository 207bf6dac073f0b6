#pragma once

#include "ctgl/model.hpp"
#include "ctgl/rng.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ctgl {

// Discrete-time model without decay: at every step each neuron fires
// independently with probability phi_i(U(i)); a neuron that fires resets
// to 0, the others add the weights of the neurons that fired and are
// clamped at 0.
struct DiscreteState {
  std::int64_t t = 0;
  std::vector<double> potentials;
};

struct StepRecord {
  std::int64_t t = 0;
  std::vector<NeuronId> fired;
  // Number of neurons whose phi exceeded 1 and was clamped this step.
  std::size_t clamped = 0;
};

// phi(U) clamped to [0, 1]; clamped entries are counted in *clamped.
std::vector<double> firing_probabilities(const DiscreteState& state, const NetworkConfig& cfg,
                                         std::size_t* clamped = nullptr);

// Potential update shared by both steppers: `base` holds the potentials
// carried over from before the firing (unchanged in discrete time).
std::vector<double> update_potentials(std::vector<double> base, const NetworkConfig& cfg,
                                      const std::vector<NeuronId>& fired);

// One Bernoulli step t -> t + 1. Draws one uniform per neuron.
std::pair<DiscreteState, StepRecord> single_step(const DiscreteState& state,
                                                 const NetworkConfig& cfg, RngStream& rng);

// Jumps directly to the next step with a discharge: per-neuron geometric
// waits (one uniform per neuron with p > 0), advance by the minimum, fire the
// whole argmin set. nullopt when every p is 0 (the network is dead).
std::optional<std::pair<DiscreteState, StepRecord>> multi_step(const DiscreteState& state,
                                                               const NetworkConfig& cfg,
                                                               RngStream& rng);

enum class DiscreteMode { Single, Multi };

enum class Termination { Death, EventCap, TimeCap };

const char* to_string(Termination t);

struct DiscreteRun {
  std::vector<StepRecord> records; // only steps with at least one discharge
  Termination termination = Termination::TimeCap;
  std::size_t clamped = 0;
};

// Runs from the initial potentials until time reaches `horizon`, the
// network is dead (every phi is 0), or `max_events` discharge steps have
// been recorded. Decay laws in `cfg` play no role here.
DiscreteRun run_discrete(const NetworkConfig& cfg, std::int64_t horizon, DiscreteMode mode,
                         RngStream& rng,
                         std::uint64_t max_events = std::numeric_limits<std::uint64_t>::max());

} // namespace ctgl
