#include "ctgl/death.hpp"

#include <algorithm>

namespace ctgl {

int zero_order(const PotentialFn& phi) {
  switch (phi.family()) {
  case PotentialFamily::Exponential:
    return 1; // 1 - e^{-beta u} ~ beta u
  case PotentialFamily::Rational:
  case PotentialFamily::Monomial:
    return phi.r();
  }
  return 1;
}

NeuronClass classify_neuron(const PotentialFn& phi, const DecayLaw& decay) {
  NeuronClass c;
  c.zero_order = zero_order(phi);
  if (decay.kind() == DecayKind::FloorSplit) {
    // From u >= 1 the potential never drops below floor(u) > 0.
    c.cls = HazardClass::R;
    return c;
  }
  c.cls = static_cast<double>(c.zero_order) > decay.gamma() - 1.0 ? HazardClass::S
                                                                  : HazardClass::R;
  return c;
}

InfluenceDigraph influence_digraph(const NetworkConfig& cfg,
                                   const std::vector<NeuronId>& vertices) {
  InfluenceDigraph g;
  g.vertices = vertices;
  for (NeuronId i : vertices) {
    for (NeuronId j : vertices) {
      if (i != j && cfg.weight(i, j) > 0.0) g.arcs.emplace_back(i, j);
    }
  }
  return g;
}

std::vector<NeuronId> topological_order(const InfluenceDigraph& g) {
  const std::size_t n = g.vertices.size();
  auto index_of = [&](NeuronId v) {
    return static_cast<std::size_t>(
        std::find(g.vertices.begin(), g.vertices.end(), v) - g.vertices.begin());
  };
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [from, to] : g.arcs) {
    const std::size_t a = index_of(from), b = index_of(to);
    if (a == n || b == n || a == b) continue;
    out[a].push_back(b);
    ++indegree[b];
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<NeuronId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    order.push_back(g.vertices[v]);
    for (std::size_t w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return order;
}

bool is_dag(const InfluenceDigraph& g) {
  return topological_order(g).size() == g.vertices.size();
}

const char* to_string(DeathConclusion c) {
  switch (c) {
  case DeathConclusion::DiesAlmostSurely: return "dies_almost_surely";
  case DeathConclusion::NeverDiesAlmostSurely: return "never_dies_almost_surely";
  case DeathConclusion::Inapplicable: return "inapplicable";
  }
  return "unknown";
}

DeathVerdict death_verdict(const NetworkConfig& cfg) {
  DeathVerdict v;
  std::vector<NeuronId> r_class;
  for (const auto& nr : cfg.neurons()) {
    v.classes.push_back(classify_neuron(nr.phi, nr.decay));
    if (v.classes.back().cls == HazardClass::R) r_class.push_back(nr.id);
  }
  v.restricted = influence_digraph(cfg, r_class);
  v.dag = is_dag(v.restricted);

  const DeathHypotheses h = check_death_hypotheses(cfg);
  v.hypotheses_ok = h.all_ok();
  v.violations = h.violations;
  if (!v.hypotheses_ok) {
    v.conclusion = DeathConclusion::Inapplicable;
  } else {
    v.conclusion = v.dag ? DeathConclusion::DiesAlmostSurely
                         : DeathConclusion::NeverDiesAlmostSurely;
  }
  return v;
}

} // namespace ctgl
