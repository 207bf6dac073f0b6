#include "ctgl/discrete.hpp"

#include "ctgl/kernels.hpp"
#include "ctgl/samplers.hpp"

#include <algorithm>

namespace ctgl {

const char* to_string(Termination t) {
  switch (t) {
  case Termination::Death: return "death";
  case Termination::EventCap: return "event_cap";
  case Termination::TimeCap: return "time_cap";
  }
  return "unknown";
}

std::vector<double> firing_probabilities(const DiscreteState& state, const NetworkConfig& cfg,
                                         std::size_t* clamped) {
  std::vector<double> p(cfg.size());
  std::size_t over = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = cfg.neurons()[i].phi(state.potentials[i]);
    if (v > 1.0) ++over;
    p[i] = std::clamp(v, 0.0, 1.0);
  }
  if (clamped != nullptr) *clamped = over;
  return p;
}

std::vector<double> update_potentials(std::vector<double> base, const NetworkConfig& cfg,
                                      const std::vector<NeuronId>& fired) {
  std::vector<std::uint8_t> mask(base.size(), 0);
  for (NeuronId j : fired) mask[j] = 1;
  simd::add_rows(cfg.weights(), cfg.size(), fired, base);
  simd::rectify_reset(base, mask);
  return base;
}

std::pair<DiscreteState, StepRecord> single_step(const DiscreteState& state,
                                                 const NetworkConfig& cfg, RngStream& rng) {
  StepRecord rec;
  rec.t = state.t + 1;
  const std::vector<double> p = firing_probabilities(state, cfg, &rec.clamped);
  std::vector<double> draws(p.size());
  for (double& v : draws) v = rng.uniform();
  std::vector<std::uint8_t> mask(p.size());
  simd::mark_below(draws, p, mask);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) rec.fired.push_back(static_cast<NeuronId>(i));
  }
  DiscreteState next{rec.t, update_potentials(state.potentials, cfg, rec.fired)};
  return {std::move(next), std::move(rec)};
}

std::optional<std::pair<DiscreteState, StepRecord>> multi_step(const DiscreteState& state,
                                                               const NetworkConfig& cfg,
                                                               RngStream& rng) {
  StepRecord rec;
  const std::vector<double> p = firing_probabilities(state, cfg, &rec.clamped);
  std::vector<std::uint64_t> waits(p.size(), kGeometricNever);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) waits[i] = sample_geometric(p[i], rng);
  }
  const std::uint64_t wait = *std::min_element(waits.begin(), waits.end());
  if (wait == kGeometricNever) return std::nullopt;
  for (std::size_t i = 0; i < waits.size(); ++i) {
    if (waits[i] == wait) rec.fired.push_back(static_cast<NeuronId>(i));
  }
  rec.t = state.t + static_cast<std::int64_t>(wait);
  DiscreteState next{rec.t, update_potentials(state.potentials, cfg, rec.fired)};
  return std::make_pair(std::move(next), std::move(rec));
}

DiscreteRun run_discrete(const NetworkConfig& cfg, std::int64_t horizon, DiscreteMode mode,
                         RngStream& rng, std::uint64_t max_events) {
  DiscreteRun run;
  DiscreteState state{0, cfg.initial_potentials()};
  while (state.t < horizon) {
    if (run.records.size() >= max_events) {
      run.termination = Termination::EventCap;
      return run;
    }
    if (mode == DiscreteMode::Single) {
      // A network with every phi at 0 stays frozen forever.
      const auto p = firing_probabilities(state, cfg);
      if (std::all_of(p.begin(), p.end(), [](double x) { return x == 0.0; })) {
        run.termination = Termination::Death;
        return run;
      }
      auto [next, rec] = single_step(state, cfg, rng);
      run.clamped += rec.clamped;
      state = std::move(next);
      if (!rec.fired.empty()) run.records.push_back(std::move(rec));
    } else {
      auto step = multi_step(state, cfg, rng);
      if (!step) {
        run.termination = Termination::Death;
        return run;
      }
      auto& [next, rec] = *step;
      if (rec.t > horizon) break;
      run.clamped += rec.clamped;
      state = std::move(next);
      run.records.push_back(std::move(rec));
    }
  }
  run.termination = Termination::TimeCap;
  return run;
}

} // namespace ctgl
