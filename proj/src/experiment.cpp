#include "ctgl/experiment.hpp"

#include "ctgl/death.hpp"
#include "ctgl/kernels.hpp"
#include "ctgl/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

namespace ctgl {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing key " + path + "." + key);
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path + ": expected a finite number");
  return x;
}

std::uint64_t count_at(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(path + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path + ": expected a string");
  return v.get<std::string>();
}

// Re-raises model-level range errors ("decay.gamma must be ...") under the
// full key path of the neuron they came from.
template <typename F>
auto with_path(const std::string& prefix, F&& build) {
  try {
    return build();
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + "." + e.what());
  }
}

PotentialFn parse_phi(const json& v, const std::string& path) {
  const std::string family = string_at(require(v, "family", path), path + ".family");
  const double beta = number_at(require(v, "beta", path), path + ".beta");
  int r = 1;
  if (family != "exponential") {
    const json& rv = require(v, "r", path);
    if (!rv.is_number_integer() || rv.get<std::int64_t>() < 1 || rv.get<std::int64_t>() > 64) {
      throw ConfigError(path + ".r: expected an integer in [1, 64]");
    }
    r = rv.get<int>();
  }
  const std::string parent = path.substr(0, path.rfind('.'));
  return with_path(parent, [&] {
    if (family == "exponential") return PotentialFn::exponential(beta);
    if (family == "rational") return PotentialFn::rational(r, beta);
    if (family == "monomial") return PotentialFn::monomial(r, beta);
    throw ConfigError("phi.family: unknown family '" + family + "'");
  });
}

DecayLaw parse_decay(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path + ": expected an object");
  const std::string parent = path.substr(0, path.rfind('.'));
  if (const auto it = v.find("law"); it != v.end()) {
    const std::string law = string_at(*it, path + ".law");
    if (law == "floor_split") return DecayLaw::floor_split();
    if (law != "power") throw ConfigError(path + ".law: unknown decay law '" + law + "'");
  }
  const double gamma = number_at(require(v, "gamma", path), path + ".gamma");
  const double mu = number_at(require(v, "mu", path), path + ".mu");
  return with_path(parent, [&] { return DecayLaw::power_law(gamma, mu); });
}

RunMode parse_mode(const std::string& s, const std::string& path) {
  if (s == "discrete_single") return RunMode::DiscreteSingle;
  if (s == "discrete_multi") return RunMode::DiscreteMulti;
  if (s == "continuous") return RunMode::Continuous;
  throw ConfigError(path + ": unknown mode '" + s + "'");
}

ReplicaResult run_one(const ExperimentConfig& cfg, std::uint64_t replica) {
  RngStream rng(cfg.run.seed, replica);
  ReplicaResult out;
  out.replica = replica;
  if (cfg.run.mode == RunMode::Continuous) {
    const EventTrace trace =
        run_continuous(cfg.network, {cfg.run.max_events, cfg.run.max_time}, rng);
    out.termination = trace.termination;
    for (const Event& e : trace.events) {
      out.times.push_back(e.time);
      out.fired.push_back(e.fired);
    }
    return out;
  }
  const double capped = std::min(cfg.run.max_time, 9.0e18);
  const auto horizon = static_cast<std::int64_t>(std::floor(capped));
  const DiscreteMode mode =
      cfg.run.mode == RunMode::DiscreteSingle ? DiscreteMode::Single : DiscreteMode::Multi;
  const DiscreteRun run = run_discrete(cfg.network, horizon, mode, rng, cfg.run.max_events);
  out.termination = run.termination;
  out.clamped = run.clamped;
  for (const StepRecord& r : run.records) {
    out.times.push_back(static_cast<double>(r.t));
    out.fired.push_back(r.fired);
  }
  return out;
}

} // namespace

const char* to_string(RunMode m) {
  switch (m) {
  case RunMode::DiscreteSingle: return "discrete_single";
  case RunMode::DiscreteMulti: return "discrete_multi";
  case RunMode::Continuous: return "continuous";
  }
  return "unknown";
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  const json& neurons_v = require(doc, "neurons", "config");
  if (!neurons_v.is_array() || neurons_v.empty()) {
    throw ConfigError("neurons: expected a non-empty array");
  }
  std::vector<Neuron> neurons;
  for (std::size_t k = 0; k < neurons_v.size(); ++k) {
    const std::string path = "neurons[" + std::to_string(k) + "]";
    const json& nv = neurons_v[k];
    Neuron nr;
    nr.id = static_cast<NeuronId>(count_at(require(nv, "id", path), path + ".id"));
    nr.phi = parse_phi(require(nv, "phi", path), path + ".phi");
    nr.decay = parse_decay(require(nv, "decay", path), path + ".decay");
    nr.initial_potential =
        number_at(require(nv, "initial_potential", path), path + ".initial_potential");
    neurons.push_back(nr);
  }
  const std::size_t n = neurons.size();

  const json& w = require(doc, "weights", "config");
  if (!w.is_array() || w.size() != n) {
    throw ConfigError("weights: expected an array of " + std::to_string(n) + " rows");
  }
  std::vector<double> weights;
  weights.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = "weights[" + std::to_string(i) + "]";
    if (!w[i].is_array() || w[i].size() != n) {
      throw ConfigError(row + ": expected " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      weights.push_back(number_at(w[i][j], row + "[" + std::to_string(j) + "]"));
    }
  }

  const json& rv = require(doc, "run", "config");
  if (!rv.is_object()) throw ConfigError("run: expected an object");
  RunSettings run;
  run.mode = parse_mode(string_at(require(rv, "mode", "run"), "run.mode"), "run.mode");
  if (const auto it = rv.find("max_events"); it != rv.end()) {
    run.max_events = count_at(*it, "run.max_events");
  }
  if (const auto it = rv.find("max_time"); it != rv.end() && !it->is_null()) {
    run.max_time = number_at(*it, "run.max_time");
  }
  if (const auto it = rv.find("replicas"); it != rv.end()) {
    run.replicas = count_at(*it, "run.replicas");
  }
  if (const auto it = rv.find("seed"); it != rv.end()) run.seed = count_at(*it, "run.seed");
  if (run.max_events == 0) throw ConfigError("run.max_events: must be positive");
  if (!(run.max_time > 0.0)) throw ConfigError("run.max_time: must be positive");
  if (run.replicas == 0) throw ConfigError("run.replicas: must be at least 1");

  ExperimentConfig cfg{NetworkConfig(std::move(neurons), std::move(weights)), run};
  validate_config(cfg.network);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_config(doc);
}

std::vector<ReplicaResult> run_replicas(const ExperimentConfig& cfg, unsigned threads) {
  const std::uint64_t count = cfg.run.replicas;
  std::vector<ReplicaResult> results(count);
  std::vector<std::exception_ptr> errors(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t k = next++; k < count; k = next++) {
      try {
        results[k] = run_one(cfg, k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

RunSummary summarize(std::span<const ReplicaResult> results) {
  RunSummary s;
  s.replicas = results.size();
  std::uint64_t deaths = 0;
  double events = 0.0, death_time = 0.0;
  for (const ReplicaResult& r : results) {
    s.terminations.push_back(r.termination);
    events += static_cast<double>(r.times.size());
    if (r.termination == Termination::Death) {
      ++deaths;
      death_time += r.times.empty() ? 0.0 : r.times.back();
    }
  }
  if (!results.empty()) {
    s.death_fraction = static_cast<double>(deaths) / static_cast<double>(results.size());
    s.mean_events = events / static_cast<double>(results.size());
  }
  if (deaths > 0) s.mean_death_time = death_time / static_cast<double>(deaths);
  return s;
}

double ks_statistic(std::span<const double> samples, const WaitTimeLaw& law) {
  if (samples.empty()) throw DomainError("KS statistic of an empty sample");
  const double limit = defect_threshold(law);
  if (!(limit > 0.0)) throw DomainError("law never produces a finite wait");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  if (!std::isfinite(sorted.back())) throw DomainError("KS statistic needs finite draws");
  std::vector<double> model(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    model[k] = cdf(law, ExtendedTime(sorted[k])) / limit;
  }
  return simd::ks_sup(model);
}

std::string format_spike_row(std::uint64_t replica, std::uint64_t event_index, double time,
                             NeuronId neuron) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%llu,%llu,%#.16g,%u",
                static_cast<unsigned long long>(replica),
                static_cast<unsigned long long>(event_index), time, neuron);
  return buf;
}

json summary_document(const RunSummary& summary) {
  json doc;
  doc["replicas"] = summary.replicas;
  doc["death_fraction"] = summary.death_fraction;
  doc["mean_events"] = summary.mean_events;
  doc["mean_death_time"] =
      summary.mean_death_time ? json(*summary.mean_death_time) : json(nullptr);
  json reasons = json::array();
  for (Termination t : summary.terminations) reasons.push_back(to_string(t));
  doc["terminations"] = reasons;
  return doc;
}

void write_outputs(std::span<const ReplicaResult> results, const RunSummary& summary,
                   const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

  const auto spikes_path = out_dir / "spikes.csv";
  std::ofstream spikes(spikes_path, std::ios::binary | std::ios::trunc);
  if (!spikes) throw IoError("cannot open " + spikes_path.string() + " for writing");
  spikes << "replica,event_index,time,neuron\n";
  for (const ReplicaResult& r : results) {
    for (std::size_t e = 0; e < r.times.size(); ++e) {
      for (NeuronId i : r.fired[e]) {
        spikes << format_spike_row(r.replica, e, r.times[e], i) << '\n';
      }
    }
  }
  spikes.flush();
  if (!spikes) throw IoError("failed writing " + spikes_path.string());

  const auto summary_path = out_dir / "summary.json";
  std::ofstream sum(summary_path, std::ios::binary | std::ios::trunc);
  if (!sum) throw IoError("cannot open " + summary_path.string() + " for writing");
  sum << summary_document(summary).dump(2) << '\n';
  sum.flush();
  if (!sum) throw IoError("failed writing " + summary_path.string());
}

json analyze_document(const NetworkConfig& cfg) {
  const DeathVerdict v = death_verdict(cfg);
  json classes = json::array();
  for (std::size_t i = 0; i < v.classes.size(); ++i) {
    classes.push_back({{"neuron", i},
                       {"class", v.classes[i].cls == HazardClass::S ? "S" : "R"},
                       {"zero_order", v.classes[i].zero_order}});
  }
  json arcs = json::array();
  for (const auto& [a, b] : v.restricted.arcs) arcs.push_back({a, b});
  return {{"classes", classes},
          {"arcs", arcs},
          {"dag", v.dag},
          {"conclusion", to_string(v.conclusion)},
          {"hypotheses_ok", v.hypotheses_ok},
          {"violations", v.violations}};
}

std::vector<CheckResult> validation_suite(std::uint64_t seed, std::size_t samples,
                                          const NetworkConfig* network) {
  struct Case {
    PotentialFn phi;
    DecayLaw decay;
  };
  const std::vector<Case> cases{
      {PotentialFn::rational(1, 1.0), DecayLaw::power_law(1.0, 1.0)},
      {PotentialFn::monomial(1, 1.0), DecayLaw::power_law(1.0, 1.0)},
      {PotentialFn::rational(1, 1.0), DecayLaw::power_law(2.0, 1.0)},
      {PotentialFn::rational(2, 1.0), DecayLaw::power_law(2.0, 1.0)},
      {PotentialFn::monomial(1, 1.0), DecayLaw::power_law(2.0, 1.0)},
      {PotentialFn::monomial(3, 1.0), DecayLaw::power_law(2.0, 1.0)},
  };
  std::vector<CheckResult> out;
  std::uint64_t stream = 0;

  auto ks_check = [&](const std::string& name, const WaitTimeLaw& law, std::size_t n,
                      double threshold) {
    RngStream rng(seed, stream++);
    std::vector<double> draws;
    draws.reserve(n);
    // Draw until n finite waits; the law is conditioned on finiteness.
    for (std::size_t tries = 0; draws.size() < n && tries < 100 * n; ++tries) {
      const ExtendedTime t = sample_wait_time(law, rng);
      if (t.is_finite()) draws.push_back(t.value());
    }
    if (draws.empty()) return;
    const double d = ks_statistic(draws, law);
    out.push_back({name, d, threshold, d <= threshold});
  };

  for (const Case& c : cases) {
    const WaitTimeLaw probe{c.phi, c.decay, 1.0};
    const std::string label = to_string(closed_form_of(probe));
    double worst = 0.0;
    for (double u0 : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      for (double t : {0.05, 0.3, 1.0, 2.5, 6.0}) {
        const WaitTimeLaw law{c.phi, c.decay, u0};
        worst = std::max(worst, std::abs(cumulative_hazard(law, t) -
                                         cumulative_hazard_numeric(law, t, 1e-10)));
      }
    }
    out.push_back({"hazard closed form vs quadrature [" + label + "]", worst, 1e-6,
                   worst <= 1e-6});
    ks_check("sampler KS [" + label + "]", probe, samples, 0.01);
  }

  if (network != nullptr) {
    for (const Neuron& nr : network->neurons()) {
      const WaitTimeLaw law{nr.phi, nr.decay, nr.initial_potential};
      if (nr.initial_potential <= 0.0) continue;
      const bool closed = closed_form_of(law) != ClosedForm::None;
      // Numeric inversion costs a few hundred quadratures per draw.
      const std::size_t n = closed ? samples : std::min<std::size_t>(samples, 2000);
      const double threshold = closed ? 0.01 : 1.63 / std::sqrt(static_cast<double>(n));
      ks_check("sampler KS [neuron " + std::to_string(nr.id) + "]", law, n, threshold);
    }
  }
  return out;
}

} // namespace ctgl
