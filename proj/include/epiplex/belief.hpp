#pragma once

#include <map>

#include "epiplex/complex.hpp"
#include "epiplex/kripke.hpp"

namespace epiplex {

// Per agent, an idempotent self-map on that agent's vertices.
struct BeliefAssignment {
  std::map<AgentId, std::map<VertexId, VertexId>> functions;

  // Defaults to the identity when an agent or vertex is unlisted.
  const VertexId& apply(const AgentId& a, const VertexId& v) const;
};

struct BeliefReport {
  std::vector<Violation> problems;
  bool ok() const { return problems.empty(); }
};

BeliefReport validate_assignment(const SimplicialModel& model,
                                 const BeliefAssignment& bf);

// True for agent a iff f_a preserves a's own local-variable values.
std::map<AgentId, bool> is_locally_correct(const SimplicialModel& model,
                                           const BeliefAssignment& bf);

struct Kd45Result {
  KripkeModel base;  // kappa(model); relations below index its states
  // relations[agentIdx] = sorted pairs (s, t) with R_a s t
  std::vector<std::vector<std::pair<int, int>>> relations;
  bool serial = false;
  bool transitive = false;
  bool euclidean = false;
};

// Belief relation over the facet states: R_a kappa(X) kappa(Y) iff
// f_a(X_a) is a vertex of Y.
Kd45Result derive_kd45(const SimplicialModel& model, const BeliefAssignment& bf);

}  // namespace epiplex
