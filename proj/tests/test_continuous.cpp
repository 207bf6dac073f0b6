#include "ctgl/continuous.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ctgl;

namespace {

NetworkConfig uniform_network(PotentialFn phi, DecayLaw decay, std::vector<double> a,
                              std::vector<double> w) {
  std::vector<Neuron> ns;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ns.push_back({static_cast<NeuronId>(i), phi, decay, a[i]});
  }
  return NetworkConfig(std::move(ns), std::move(w));
}

const DecayLaw kExp = DecayLaw::power_law(1.0, 1.0);
const DecayLaw kRecip = DecayLaw::power_law(2.0, 1.0);

} // namespace

TEST(NextEvent, ZeroPotentialsNeverFire) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kRecip, {0, 0}, {0, 1, 1, 0});
  RngStream rng(1, 0);
  const auto ev = next_event({0, 0.0, {0.0, 0.0}}, cfg, rng);
  EXPECT_TRUE(ev.wait.is_infinite());
  EXPECT_TRUE(ev.fired.empty());
}

TEST(NextEvent, RecurrentLawAlwaysFires) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kRecip, {1.0}, {0});
  RngStream rng(2, 0);
  for (int k = 0; k < 1000; ++k) {
    const auto ev = next_event({0, 0.0, {1.0}}, cfg, rng);
    ASSERT_TRUE(ev.wait.is_finite());
    ASSERT_GT(ev.wait.value(), 0.0);
    ASSERT_EQ(ev.fired, std::vector<NeuronId>{0});
  }
}

TEST(NextEvent, NoTiesBetweenIndependentNeurons) {
  const auto cfg =
      uniform_network(PotentialFn::rational(2, 1.0), kRecip, {1.0, 1.0}, {0, 0, 0, 0});
  RngStream rng(3, 0);
  int ties = 0;
  for (int k = 0; k < 100000; ++k) {
    const auto ev = next_event({0, 0.0, {1.0, 1.0}}, cfg, rng);
    ties += ev.fired.size() == 2;
    if (ev.wait.is_finite()) {
      ASSERT_EQ(ev.wait.value(), std::min(ev.per_neuron_waits[0], ev.per_neuron_waits[1]));
    }
  }
  EXPECT_EQ(ties, 0);
}

TEST(ApplyEvent, DecayThenInput) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kExp, {4, 1}, {0, 2, 0, 0});
  const auto next = apply_event({0, 1.0, {4.0, 1.0}}, cfg, std::log(2.0), {0});
  EXPECT_EQ(next.potentials[0], 0.0);
  EXPECT_NEAR(next.potentials[1], 2.5, 1e-15);
  EXPECT_EQ(next.n, 1u);
  EXPECT_NEAR(next.abs_time, 1.0 + std::log(2.0), 1e-15);
}

TEST(ApplyEvent, NegativeInputClamps) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kExp, {4, 1}, {0, -10, 0, 0});
  EXPECT_EQ(apply_event({0, 0.0, {4.0, 1.0}}, cfg, 0.3, {0}).potentials[1], 0.0);
}

TEST(ApplyEvent, ZeroWeightsOnlyDecay) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kRecip, {1, 1, 1},
                                   std::vector<double>(9, 0.0));
  const auto next = apply_event({0, 0.0, {3.0, 1.0, 2.0}}, cfg, 2.0, {0});
  EXPECT_NEAR(next.potentials[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(next.potentials[2], 0.4, 1e-15);
}

TEST(RunContinuous, AllZeroDiesImmediately) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kRecip, {0, 0}, {0, 1, 1, 0});
  RngStream rng(4, 0);
  const auto trace = run_continuous(cfg, {}, rng);
  EXPECT_EQ(trace.termination, Termination::Death);
  EXPECT_EQ(trace.death_index, 0u);
  EXPECT_TRUE(trace.events.empty());
  EXPECT_TRUE(std::isinf(trace.covered_until));
}

TEST(RunContinuous, LoneRecurrentNeuronFiresOnce) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kRecip, {1.0}, {0});
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    RngStream rng(5, rep);
    const auto trace = run_continuous(cfg, {.max_events = 50}, rng);
    ASSERT_EQ(trace.events.size(), 1u);
    ASSERT_TRUE(std::isfinite(trace.events[0].time));
    ASSERT_EQ(trace.termination, Termination::Death);
  }
}

TEST(RunContinuous, RecurrentPairReachesEventCap) {
  const auto pair = uniform_network(PotentialFn::monomial(1, 1.0), kRecip, {1, 1}, {0, 1, 1, 0});
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    RngStream rng(6, rep);
    const auto trace = run_continuous(pair, {.max_events = 200}, rng);
    ASSERT_EQ(trace.termination, Termination::EventCap);
    ASSERT_EQ(trace.events.size(), 200u);
    for (const auto& e : trace.events) ASSERT_TRUE(std::isfinite(e.time));
  }
}

TEST(RunContinuous, DeathFractionAtFirstEvent) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kExp, {1.0}, {0});
  const int n = 10000;
  int dead_at_first = 0;
  for (int rep = 0; rep < n; ++rep) {
    RngStream rng(7, static_cast<std::uint64_t>(rep));
    dead_at_first += run_continuous(cfg, {}, rng).death_index == 0u;
  }
  const double p = std::exp(-1.0);
  EXPECT_NEAR(dead_at_first / double(n), p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(RunContinuous, BoundedHazardNetworksAlwaysDie) {
  const auto cfg =
      uniform_network(PotentialFn::monomial(1, 1.0), kExp, {1, 1, 1}, {0, 1, 1, 1, 0, 1, 1, 1, 0});
  for (std::uint64_t rep = 0; rep < 1000; ++rep) {
    RngStream rng(8, rep);
    ASSERT_EQ(run_continuous(cfg, {}, rng).termination, Termination::Death);
  }
}

TEST(RunContinuous, TimesIncreaseAndPotentialsStayNonNegative) {
  const auto cfg = uniform_network(PotentialFn::rational(1, 1.0), kRecip, {1, 2, 0.5},
                                   {0, 0.8, -0.5, 0.6, 0, 0.9, 0.7, -0.3, 0});
  RngStream rng(9, 0);
  const auto trace = run_continuous(cfg, {.max_events = 5000}, rng);
  double prev = 0.0;
  for (const auto& e : trace.events) {
    ASSERT_GT(e.time, prev);
    prev = e.time;
    for (double u : e.potentials) ASSERT_GE(u, 0.0);
  }
  for (double t = 0.0; t < trace.covered_until; t += trace.covered_until / 997) {
    for (NeuronId i = 0; i < 3; ++i) ASSERT_GE(potential_at(trace, cfg, i, t), 0.0);
  }
}

TEST(RunContinuous, Deterministic) {
  const auto cfg =
      uniform_network(PotentialFn::rational(1, 1.0), kRecip, {1, 2}, {0, 0.8, 0.6, 0});
  RngStream a(10, 3), b(10, 3);
  const auto ta = run_continuous(cfg, {.max_events = 2000}, a);
  const auto tb = run_continuous(cfg, {.max_events = 2000}, b);
  ASSERT_EQ(ta.events.size(), tb.events.size());
  for (std::size_t k = 0; k < ta.events.size(); ++k) {
    ASSERT_EQ(ta.events[k].time, tb.events[k].time);
    ASSERT_EQ(ta.events[k].fired, tb.events[k].fired);
    ASSERT_EQ(ta.events[k].potentials, tb.events[k].potentials);
  }
}

TEST(RunContinuous, TimeCap) {
  const auto cfg =
      uniform_network(PotentialFn::monomial(1, 1.0), kRecip, {1, 1}, {0, 1, 1, 0});
  RngStream rng(11, 0);
  const auto trace = run_continuous(cfg, {.max_time = 5.0}, rng);
  EXPECT_EQ(trace.termination, Termination::TimeCap);
  EXPECT_EQ(trace.covered_until, 5.0);
  for (const auto& e : trace.events) EXPECT_LE(e.time, 5.0);
}

TEST(PotentialAt, Interpolation) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kExp, {2, 1}, {0, 1, 1, 0});
  RngStream rng(12, 0);
  const auto trace = run_continuous(cfg, {.max_events = 20}, rng);
  ASSERT_FALSE(trace.events.empty());
  EXPECT_EQ(potential_at(trace, cfg, 0, 0.0), 2.0);
  EXPECT_EQ(potential_at(trace, cfg, 1, 0.0), 1.0);
  const Event& first = trace.events.front();
  const NeuronId fired = first.fired.front();
  EXPECT_EQ(potential_at(trace, cfg, fired, first.time), 0.0);
  const double mid = first.time / 2;
  EXPECT_NEAR(potential_at(trace, cfg, 0, mid), 2.0 * std::exp(-mid), 1e-15);
  if (trace.events.size() > 1) {
    const Event& second = trace.events[1];
    const double t = (first.time + second.time) / 2;
    const NeuronId other = 1 - fired;
    EXPECT_NEAR(potential_at(trace, cfg, other, t),
                first.potentials[other] * std::exp(-(t - first.time)), 1e-14);
  }
}

TEST(PotentialAt, OutOfCoverageThrows) {
  const auto cfg = uniform_network(PotentialFn::monomial(1, 1.0), kRecip, {1, 1}, {0, 1, 1, 0});
  RngStream rng(13, 0);
  const auto trace = run_continuous(cfg, {.max_events = 10}, rng);
  ASSERT_EQ(trace.termination, Termination::EventCap);
  EXPECT_THROW(potential_at(trace, cfg, 0, trace.covered_until + 1.0), std::out_of_range);
  EXPECT_THROW(potential_at(trace, cfg, 0, -1.0), std::out_of_range);
  EXPECT_THROW(potential_at(trace, cfg, 5, 0.0), std::out_of_range);
}
