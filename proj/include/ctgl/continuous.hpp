#pragma once

#include "ctgl/discrete.hpp"
#include "ctgl/model.hpp"
#include "ctgl/rng.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace ctgl {

struct ContinuousState {
  std::uint64_t n = 0;
  double abs_time = 0.0;
  std::vector<double> potentials; // right after the last event
};

struct NextEvent {
  ExtendedTime wait;
  std::vector<NeuronId> fired; // empty iff wait is infinite
  std::vector<double> per_neuron_waits;
};

// Samples one wait per neuron from its wait-time law at the current
// potential (exactly one uniform per neuron, in neuron order), then takes
// the minimum and its full argmin set.
NextEvent next_event(const ContinuousState& state, const NetworkConfig& cfg, RngStream& rng);

// Fired neurons reset to 0; the rest decay over `wait`, receive the weights
// of the fired neurons and are clamped at 0.
ContinuousState apply_event(const ContinuousState& state, const NetworkConfig& cfg,
                            double wait, const std::vector<NeuronId>& fired);

struct Event {
  double time = 0.0;
  std::vector<NeuronId> fired;
  std::vector<double> potentials; // right after the event
};

struct EventTrace {
  std::vector<double> initial_potentials;
  std::vector<Event> events;
  // Number of events before the first all-infinite wait; set iff Death.
  std::optional<std::uint64_t> death_index;
  Termination termination = Termination::EventCap;
  // Right end of the interval over which potentials are defined: +inf after
  // death, max_time on TimeCap, the last event time on EventCap.
  double covered_until = 0.0;
};

struct RunCaps {
  std::uint64_t max_events = 1'000'000;
  double max_time = std::numeric_limits<double>::infinity();
};

// Thrown when time stops advancing: 100000 consecutive events that together
// move the clock by less than 1e-12.
class ZenoError : public NumericError {
public:
  using NumericError::NumericError;
};

EventTrace run_continuous(const NetworkConfig& cfg, const RunCaps& caps, RngStream& rng);

// Potential of neuron i at absolute time t, decaying from the last event at
// or before t. At an event time the post-event value is returned. Throws
// std::out_of_range beyond trace.covered_until.
double potential_at(const EventTrace& trace, const NetworkConfig& cfg, NeuronId i, double t);

} // namespace ctgl
