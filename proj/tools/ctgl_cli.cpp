// ctgl: simulate, analyze and validate continuous-time stochastic neuron networks.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure (including a
// failed validation check), 1 anything else.

#include "ctgl/experiment.hpp"
#include "ctgl/kernels.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> replicas;
  std::string out = "out";
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required) {
  auto* opt = cmd->add_option("--config", f.config, "JSON experiment config");
  if (config_required) opt->required();
  cmd->add_option("--seed", f.seed, "Override run.seed");
  cmd->add_option("--replicas", f.replicas, "Override run.replicas");
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
}

ctgl::ExperimentConfig load(const CommonFlags& f) {
  ctgl::ExperimentConfig cfg = ctgl::load_config(f.config);
  if (f.seed) cfg.run.seed = *f.seed;
  if (f.replicas) {
    if (*f.replicas == 0) throw ctgl::ConfigError("--replicas must be at least 1");
    cfg.run.replicas = *f.replicas;
  }
  return cfg;
}

int simulate(const CommonFlags& f, unsigned threads) {
  const ctgl::ExperimentConfig cfg = load(f);
  if (cfg.run.mode != ctgl::RunMode::Continuous) {
    std::cerr << "warning: decay laws are ignored in discrete mode\n";
  }
  const auto results = ctgl::run_replicas(cfg, threads);
  std::size_t clamped = 0;
  for (const auto& r : results) clamped += r.clamped;
  if (clamped > 0) {
    std::cerr << "warning: phi exceeded 1 and was clamped to 1 in " << clamped
              << " neuron-steps; discrete firing probabilities must lie in [0, 1]\n";
  }
  const ctgl::RunSummary summary = ctgl::summarize(results);
  ctgl::write_outputs(results, summary, f.out);
  std::cout << ctgl::summary_document(summary).dump(2) << '\n';
  return 0;
}

int analyze(const CommonFlags& f) {
  const ctgl::ExperimentConfig cfg = load(f);
  std::cout << ctgl::analyze_document(cfg.network).dump(2) << '\n';
  return 0;
}

int validate(const CommonFlags& f, std::size_t samples) {
  std::optional<ctgl::ExperimentConfig> cfg;
  if (!f.config.empty()) cfg = load(f);
  const std::uint64_t seed = f.seed ? *f.seed : (cfg ? cfg->run.seed : 1);
  const auto checks =
      ctgl::validation_suite(seed, samples, cfg ? &cfg->network : nullptr);
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("[%s] %-60s %.3e (limit %.1e)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.value, c.threshold);
    ok = ok && c.pass;
  }
  std::printf("kernels: %s\n", ctgl::simd::to_string(ctgl::simd::active().isa));
  return ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-driven simulator for continuous-time stochastic neuron networks"};
  app.require_subcommand(1);

  CommonFlags sim_flags, an_flags, val_flags;
  unsigned threads = 0;
  std::size_t samples = 100000;

  auto* sim = app.add_subcommand("simulate", "Run replicas and write spikes.csv and summary.json");
  add_common(sim, sim_flags, true);
  sim->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* an = app.add_subcommand("analyze", "Print the almost-sure death verdict as JSON");
  add_common(an, an_flags, true);

  auto* val = app.add_subcommand("validate", "Check samplers and closed forms against oracles");
  add_common(val, val_flags, false);
  val->add_option("--samples", samples, "Draws per KS check")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return simulate(sim_flags, threads);
    if (*an) return analyze(an_flags);
    if (*val) return validate(val_flags, samples);
  } catch (const ctgl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ctgl::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
