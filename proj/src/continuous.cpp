#include "ctgl/continuous.hpp"

#include "ctgl/hazard.hpp"
#include "ctgl/kernels.hpp"
#include "ctgl/samplers.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctgl {

namespace {

constexpr std::uint64_t kZenoWindow = 100'000;
constexpr double kZenoAdvance = 1e-12;

} // namespace

NextEvent next_event(const ContinuousState& state, const NetworkConfig& cfg, RngStream& rng) {
  NextEvent ev;
  const std::size_t n = cfg.size();
  ev.per_neuron_waits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Neuron& nr = cfg.neurons()[i];
    const WaitTimeLaw law{nr.phi, nr.decay, state.potentials[i]};
    ev.per_neuron_waits[i] = sample_wait_time(law, rng).value();
  }
  const double wait = simd::min_value(ev.per_neuron_waits);
  ev.wait = ExtendedTime(wait);
  if (ev.wait.is_infinite()) return ev;
  std::vector<std::uint8_t> mask(n);
  simd::mark_equal(ev.per_neuron_waits, wait, mask);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) ev.fired.push_back(static_cast<NeuronId>(i));
  }
  return ev;
}

ContinuousState apply_event(const ContinuousState& state, const NetworkConfig& cfg,
                            double wait, const std::vector<NeuronId>& fired) {
  // Power-law decays are continuous in t, so the left limit at the event
  // time is the decayed value itself.
  std::vector<double> base(cfg.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    base[i] = cfg.neurons()[i].decay(state.potentials[i], wait);
  }
  std::vector<std::uint8_t> mask(base.size(), 0);
  for (NeuronId j : fired) mask[j] = 1;
  simd::add_rows(cfg.weights(), cfg.size(), fired, base);
  simd::rectify_reset(base, mask);
  return {state.n + 1, state.abs_time + wait, std::move(base)};
}

EventTrace run_continuous(const NetworkConfig& cfg, const RunCaps& caps, RngStream& rng) {
  EventTrace trace;
  trace.initial_potentials = cfg.initial_potentials();
  ContinuousState state{0, 0.0, trace.initial_potentials};

  double window_start = 0.0;
  while (true) {
    if (state.n >= caps.max_events) {
      trace.termination = Termination::EventCap;
      trace.covered_until = state.abs_time;
      return trace;
    }
    NextEvent ev = next_event(state, cfg, rng);
    if (ev.wait.is_infinite()) {
      trace.termination = Termination::Death;
      trace.death_index = state.n;
      trace.covered_until = ev.wait.value();
      return trace;
    }
    if (state.abs_time + ev.wait.value() > caps.max_time) {
      trace.termination = Termination::TimeCap;
      trace.covered_until = caps.max_time;
      return trace;
    }
    state = apply_event(state, cfg, ev.wait.value(), ev.fired);
    trace.events.push_back({state.abs_time, std::move(ev.fired), state.potentials});

    if (state.n % kZenoWindow == 0) {
      if (state.abs_time - window_start < kZenoAdvance) {
        throw ZenoError("time stopped advancing: " + std::to_string(kZenoWindow) +
                        " events within " + std::to_string(kZenoAdvance) + " time units");
      }
      window_start = state.abs_time;
    }
  }
}

double potential_at(const EventTrace& trace, const NetworkConfig& cfg, NeuronId i, double t) {
  if (i >= cfg.size()) throw std::out_of_range("neuron id out of range");
  if (!(t >= 0.0) || t > trace.covered_until) {
    throw std::out_of_range("time outside the interval covered by the trace");
  }
  const auto after = std::upper_bound(trace.events.begin(), trace.events.end(), t,
                                      [](double x, const Event& e) { return x < e.time; });
  if (after == trace.events.begin()) {
    return cfg.neurons()[i].decay(trace.initial_potentials[i], t);
  }
  const Event& last = *std::prev(after);
  return cfg.neurons()[i].decay(last.potentials[i], t - last.time);
}

} // namespace ctgl
