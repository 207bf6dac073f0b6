#pragma once

#include "ctgl/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ctgl {

// S: finite total hazard from every starting potential (the neuron may go
// silent forever). R: infinite total hazard from every positive potential
// (the neuron fires again almost surely).
enum class HazardClass { S, R };

struct NeuronClass {
  HazardClass cls = HazardClass::R;
  int zero_order = 1;
};

// Order of the zero of phi at u = 0.
int zero_order(const PotentialFn& phi);

// int_0 phi(v) v^{-gamma} dv converges iff zero_order > gamma - 1. Takes no
// starting potential: the class does not depend on it.
NeuronClass classify_neuron(const PotentialFn& phi, const DecayLaw& decay);

struct InfluenceDigraph {
  std::vector<NeuronId> vertices;
  std::vector<std::pair<NeuronId, NeuronId>> arcs;
};

// Positive-influence digraph of the network restricted to `vertices`:
// arc (i, j) iff i != j and W[i->j] > 0.
InfluenceDigraph influence_digraph(const NetworkConfig& cfg,
                                   const std::vector<NeuronId>& vertices);

// Kahn's scheme: repeatedly remove a vertex of indegree 0. Returns the
// removal order, which covers every vertex iff the digraph is acyclic.
std::vector<NeuronId> topological_order(const InfluenceDigraph& g);

bool is_dag(const InfluenceDigraph& g);

enum class DeathConclusion { DiesAlmostSurely, NeverDiesAlmostSurely, Inapplicable };

const char* to_string(DeathConclusion c);

struct DeathVerdict {
  std::vector<NeuronClass> classes;
  InfluenceDigraph restricted; // D[R]
  bool dag = false;
  DeathConclusion conclusion = DeathConclusion::Inapplicable;
  bool hypotheses_ok = false;
  std::vector<std::string> violations;
};

// With nonnegative weights, positive initial potentials and single-regime
// decays, the network stops firing after finitely many events with
// probability one iff D[R] is acyclic, and with probability zero otherwise.
// When a hypothesis fails the conclusion is Inapplicable; classes and the
// acyclicity result are still reported.
DeathVerdict death_verdict(const NetworkConfig& cfg);

} // namespace ctgl
