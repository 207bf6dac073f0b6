#pragma once

#include "ctgl/continuous.hpp"
#include "ctgl/discrete.hpp"
#include "ctgl/hazard.hpp"
#include "ctgl/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctgl {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { DiscreteSingle, DiscreteMulti, Continuous };

const char* to_string(RunMode m);

struct RunSettings {
  RunMode mode = RunMode::Continuous;
  std::uint64_t max_events = 1'000'000;
  // Continuous: time cap. Discrete: horizon in steps (floored).
  double max_time = std::numeric_limits<double>::infinity();
  std::uint64_t replicas = 1;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  NetworkConfig network;
  RunSettings run;
};

// Schema:
// {
//   "neurons": [{"id": 0,
//                "phi": {"family": "exponential|rational|monomial", "r": 1, "beta": 1.0},
//                "decay": {"gamma": 1.0, "mu": 1.0}   // or {"law": "floor_split"}
//                "initial_potential": 1.0}, ...],
//   "weights": [[...], ...],                           // N x N, weights[i][j] = W(i -> j)
//   "run": {"mode": "discrete_single|discrete_multi|continuous",
//           "max_events": 1000, "max_time": 100.0,     // max_time null = no cap
//           "replicas": 10, "seed": 42}
// }
// Errors are ConfigError naming the offending key path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ReplicaResult {
  std::uint64_t replica = 0;
  Termination termination = Termination::EventCap;
  std::vector<double> times;
  std::vector<std::vector<NeuronId>> fired;
  std::size_t clamped = 0; // discrete modes only
};

struct RunSummary {
  std::uint64_t replicas = 0;
  double death_fraction = 0.0;
  double mean_events = 0.0;
  // Mean time of the last discharge over replicas that died (0 for a
  // replica that died before its first discharge); absent when none died.
  std::optional<double> mean_death_time;
  std::vector<Termination> terminations;
};

// Replica k uses RngStream(seed, k). Replicas run on `threads` workers
// (0 = hardware concurrency); results are ordered by replica index, so
// the output does not depend on scheduling.
std::vector<ReplicaResult> run_replicas(const ExperimentConfig& cfg, unsigned threads = 0);

RunSummary summarize(std::span<const ReplicaResult> results);

// Sup distance between the empirical CDF of finite draws and the law
// conditioned on a finite wait, F(t) / lim F.
double ks_statistic(std::span<const double> samples, const WaitTimeLaw& law);

// spikes.csv: replica,event_index,time,neuron with one row per fired neuron
// (simultaneous discharges share replica, event_index and time); time uses
// 16 significant digits. summary.json: the RunSummary.
void write_outputs(std::span<const ReplicaResult> results, const RunSummary& summary,
                   const std::filesystem::path& out_dir);

std::string format_spike_row(std::uint64_t replica, std::uint64_t event_index, double time,
                             NeuronId neuron);

nlohmann::json summary_document(const RunSummary& summary);

// {classes, arcs, dag, conclusion, hypotheses_ok, violations}
nlohmann::json analyze_document(const NetworkConfig& cfg);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Closed-form hazard against time-domain quadrature and sampler KS checks
// for every closed-form branch, plus KS for each neuron's own wait-time law
// at its initial potential when a network is given.
std::vector<CheckResult> validation_suite(std::uint64_t seed, std::size_t samples,
                                          const NetworkConfig* network = nullptr);

} // namespace ctgl
