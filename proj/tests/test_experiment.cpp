#include "ctgl/experiment.hpp"
#include "ctgl/samplers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace ctgl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json one_neuron(double gamma = 1.0) {
  return {{"neurons", {{{"id", 0},
                        {"phi", {{"family", "monomial"}, {"r", 1}, {"beta", 1.0}}},
                        {"decay", {{"gamma", gamma}, {"mu", 1.0}}},
                        {"initial_potential", 1.0}}}},
          {"weights", {{0.0}}},
          {"run", {{"mode", "continuous"}, {"max_events", 100}, {"replicas", 1}, {"seed", 7}}}};
}

json pair_config(const std::string& mode, double a = 1.0) {
  json doc = {
      {"neurons", json::array()},
      {"weights", {{0.0, 0.8}, {0.6, 0.0}}},
      {"run", {{"mode", mode}, {"max_events", 300}, {"max_time", 50.0}, {"replicas", 4},
               {"seed", 123}}}};
  for (int i = 0; i < 2; ++i) {
    doc["neurons"].push_back({{"id", i},
                              {"phi", {{"family", "rational"}, {"r", 1}, {"beta", 1.0}}},
                              {"decay", {{"gamma", 2.0}, {"mu", 1.0}}},
                              {"initial_potential", a}});
  }
  return doc;
}

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ctgl_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CTGL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Config, MinimalOneNeuron) {
  const auto cfg = parse_config(one_neuron());
  EXPECT_EQ(cfg.network.size(), 1u);
  EXPECT_EQ(cfg.run.mode, RunMode::Continuous);
  EXPECT_EQ(cfg.run.seed, 7u);
  EXPECT_TRUE(std::isinf(cfg.run.max_time));
}

TEST(Config, GammaBelowOneNamesKey) {
  EXPECT_NE(config_error(one_neuron(0.5)).find("decay.gamma"), std::string::npos);
}

TEST(Config, MissingWeights) {
  json doc = one_neuron();
  doc.erase("weights");
  EXPECT_NE(config_error(doc).find("weights"), std::string::npos);
}

TEST(Config, WrongTypesAndShapes) {
  json doc = one_neuron();
  doc["neurons"][0]["phi"]["beta"] = "one";
  EXPECT_NE(config_error(doc).find("neurons[0].phi.beta"), std::string::npos);
  doc = pair_config("continuous");
  doc["weights"][1] = {1.0};
  EXPECT_NE(config_error(doc).find("weights[1]"), std::string::npos);
  doc = pair_config("sometimes");
  EXPECT_NE(config_error(doc).find("run.mode"), std::string::npos);
  doc = pair_config("continuous");
  doc["run"]["replicas"] = 0;
  EXPECT_NE(config_error(doc).find("run.replicas"), std::string::npos);
}

TEST(Config, FloorSplitAndNullTimeCap) {
  json doc = one_neuron();
  doc["neurons"][0]["decay"] = {{"law", "floor_split"}};
  doc["run"]["max_time"] = nullptr;
  const auto cfg = parse_config(doc);
  EXPECT_EQ(cfg.network.neuron(0).decay.kind(), DecayKind::FloorSplit);
  EXPECT_TRUE(std::isinf(cfg.run.max_time));
}

TEST(Config, LoadFromFile) {
  const fs::path dir = scratch("load");
  std::ofstream(dir / "ok.json") << pair_config("discrete_multi").dump();
  EXPECT_EQ(load_config(dir / "ok.json").run.mode, RunMode::DiscreteMulti);
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(load_config(dir / "bad.json"), ConfigError);
  EXPECT_THROW(load_config(dir / "absent.json"), ConfigError);
}

TEST(Replicas, DeterministicAcrossThreadCounts) {
  for (const char* mode : {"continuous", "discrete_single", "discrete_multi"}) {
    const auto cfg = parse_config(pair_config(mode));
    const auto a = run_replicas(cfg, 1);
    const auto b = run_replicas(cfg, 3);
    ASSERT_EQ(a.size(), 4u);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].replica, k);
      EXPECT_EQ(a[k].times, b[k].times) << mode;
      EXPECT_EQ(a[k].fired, b[k].fired) << mode;
    }
    EXPECT_EQ(summary_document(summarize(a)), summary_document(summarize(b)));
  }
}

TEST(Replicas, AllZeroPotentialsDie) {
  const auto results = run_replicas(parse_config(pair_config("continuous", 0.0)));
  const auto s = summarize(results);
  EXPECT_EQ(s.death_fraction, 1.0);
  EXPECT_EQ(s.mean_events, 0.0);
  ASSERT_TRUE(s.mean_death_time.has_value());
  EXPECT_EQ(*s.mean_death_time, 0.0);
}

TEST(Replicas, DeathFractionCountsDeaths) {
  json doc = one_neuron();
  doc["neurons"].push_back(doc["neurons"][0]);
  doc["neurons"][1]["id"] = 1;
  doc["weights"] = {{0.0, 1.0}, {1.0, 0.0}};
  doc["run"]["replicas"] = 200;
  doc["run"]["max_events"] = 3;
  const auto results = run_replicas(parse_config(doc));
  const auto s = summarize(results);
  std::size_t deaths = 0;
  for (auto t : s.terminations) deaths += t == Termination::Death;
  EXPECT_EQ(s.death_fraction, static_cast<double>(deaths) / 200.0);
  EXPECT_GT(deaths, 0u);
  EXPECT_LT(deaths, 200u);
}

TEST(Replicas, FirstEventDeathFraction) {
  json doc = one_neuron();
  doc["run"]["replicas"] = 10000;
  const auto results = run_replicas(parse_config(doc));
  int dead_first = 0;
  for (const auto& r : results) dead_first += r.times.empty();
  const double p = std::exp(-1.0);
  EXPECT_NEAR(dead_first / 1e4, p, 3 * std::sqrt(p * (1 - p) / 1e4));
}

TEST(Ks, SingleSampleAtMedian) {
  const WaitTimeLaw law{PotentialFn::monomial(1, 1.0), DecayLaw::power_law(2, 1), 1.0};
  const std::vector<double> one{1.0}; // F(1) = 0.5
  EXPECT_NEAR(ks_statistic(one, law), 0.5, 1e-15);
}

TEST(Ks, MismatchedLawIsSeparated) {
  const WaitTimeLaw law{PotentialFn::monomial(1, 1.0), DecayLaw::power_law(2, 1), 1.0};
  const WaitTimeLaw fast{PotentialFn::monomial(1, 1.0), DecayLaw::power_law(2, 2), 1.0};
  RngStream rng(1, 0);
  std::vector<double> own, other;
  for (int k = 0; k < 100000; ++k) {
    own.push_back(sample_wait_time(law, rng).value());
    other.push_back(sample_wait_time(fast, rng).value());
  }
  EXPECT_LE(ks_statistic(own, law), 0.01);
  EXPECT_GT(ks_statistic(other, law), 0.05);
}

TEST(Ks, ConditionsOnFiniteWaits) {
  const WaitTimeLaw law{PotentialFn::monomial(1, 1.0), DecayLaw::power_law(1, 1), 1.0};
  RngStream rng(2, 0);
  std::vector<double> finite;
  while (finite.size() < 100000) {
    const auto t = sample_wait_time(law, rng);
    if (t.is_finite()) finite.push_back(t.value());
  }
  EXPECT_LE(ks_statistic(finite, law), 0.01);
}

TEST(Ks, Errors) {
  const WaitTimeLaw law{PotentialFn::monomial(1, 1.0), DecayLaw::power_law(2, 1), 1.0};
  EXPECT_THROW(ks_statistic(std::vector<double>{}, law), DomainError);
  EXPECT_THROW(ks_statistic(std::vector<double>{1.0, INFINITY}, law), DomainError);
}

TEST(Outputs, SpikeRowFormat) {
  EXPECT_EQ(format_spike_row(0, 0, 0.5, 2), "0,0,0.5000000000000000,2");
  EXPECT_EQ(format_spike_row(3, 12, 1.0 / 3.0, 0), "3,12,0.3333333333333333,0");
}

TEST(Outputs, EmptyTraceIsHeaderOnly) {
  const fs::path dir = scratch("empty");
  std::vector<ReplicaResult> results(1);
  results[0].termination = Termination::Death;
  write_outputs(results, summarize(results), dir);
  EXPECT_EQ(slurp(dir / "spikes.csv"), "replica,event_index,time,neuron\n");
  const json summary = json::parse(slurp(dir / "summary.json"));
  EXPECT_EQ(summary["death_fraction"], 1.0);
}

TEST(Outputs, SimultaneousDischargesShareRow) {
  const fs::path dir = scratch("simultaneous");
  std::vector<ReplicaResult> results(1);
  results[0].times = {3.0};
  results[0].fired = {{0, 1}};
  write_outputs(results, summarize(results), dir);
  EXPECT_EQ(slurp(dir / "spikes.csv"),
            "replica,event_index,time,neuron\n"
            "0,0,3.000000000000000,0\n"
            "0,0,3.000000000000000,1\n");
}

TEST(Outputs, UnwritableDirectoryIsIoError) {
  const fs::path dir = scratch("blocked");
  std::ofstream(dir / "file") << "x";
  std::vector<ReplicaResult> results(1);
  EXPECT_THROW(write_outputs(results, summarize(results), dir / "file" / "sub"), IoError);
}

TEST(Analyze, DocumentShape) {
  const auto cfg = parse_config(pair_config("continuous"));
  const json doc = analyze_document(cfg.network);
  EXPECT_EQ(doc["conclusion"], "never_dies_almost_surely");
  EXPECT_EQ(doc["dag"], false);
  EXPECT_EQ(doc["hypotheses_ok"], true);
  EXPECT_EQ(doc["classes"][0]["class"], "R");
  EXPECT_EQ(doc["arcs"].size(), 2u);
}

TEST(Validation, SuitePasses) {
  for (const auto& c : validation_suite(5, 100000)) {
    EXPECT_TRUE(c.pass) << c.name << " " << c.value;
  }
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  std::ofstream(dir / "ok.json") << pair_config("continuous").dump();
  std::ofstream(dir / "bad.json") << one_neuron(0.5).dump();
  const std::string ok = (dir / "ok.json").string();
  EXPECT_EQ(run_cli("simulate --config " + ok + " --out " + (dir / "out").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "spikes.csv"));
  EXPECT_EQ(run_cli("analyze --config " + ok), 0);
  EXPECT_EQ(run_cli("analyze --config " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(run_cli("simulate --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("validate --seed 3"), 0);
}

TEST(Cli, OutputIndependentOfKernelIsa) {
  const fs::path dir = scratch("isa");
  std::ofstream(dir / "cfg.json") << pair_config("continuous").dump();
  const std::string args = "simulate --config " + (dir / "cfg.json").string() + " --out ";
  ASSERT_EQ(run_cli(args + (dir / "vec").string()), 0);
  ::setenv("CTGL_SIMD", "scalar", 1);
  const int rc = run_cli(args + (dir / "scalar").string());
  ::unsetenv("CTGL_SIMD");
  ASSERT_EQ(rc, 0);
  EXPECT_EQ(slurp(dir / "vec" / "spikes.csv"), slurp(dir / "scalar" / "spikes.csv"));
  EXPECT_EQ(slurp(dir / "vec" / "summary.json"), slurp(dir / "scalar" / "summary.json"));
}
