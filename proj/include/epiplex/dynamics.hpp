#pragma once

#include <map>

#include "epiplex/complex.hpp"
#include "epiplex/formula.hpp"
#include "epiplex/semantics.hpp"

namespace epiplex {

struct ActionVertex {
  VertexId id;
  AgentId agent;
  FormulaPtr pre;
  // Per local variable of this vertex's agent; unlisted atoms keep their value.
  std::map<AtomName, FormulaPtr> post;
};

// Chromatic pure complex of action vertices with preconditions and
// postconditions.
struct ActionModel {
  AgentSet agents;
  std::vector<ActionVertex> vertices;
  std::vector<Simplex> facets;

  const ActionVertex& vertex(const VertexId& v) const;
  ValidationReport validate() const;
};

// Restricted product: facets are the pairs (X, X') whose joint precondition
// holds at X; postconditions rewrite the valuation. Throws
// PostconditionNotUniform or EmptyProduct.
SimplicialModel product(const SimplicialModel& model, const ActionModel& action);

// Facet-precondition form and the conversions between the two styles.
std::vector<FormulaPtr> facet_pre_from_vertex_pre(const ActionModel& action);
ActionModel vertex_pre_from_facet_pre(const ActionModel& skeleton,
                                      const std::vector<FormulaPtr>& facet_pre);

enum class PreconditionLocality { Knowledge, OwnLanguage };

struct PreconditionLocalityReport {
  struct Entry {
    VertexId vertex;
    bool syntactic_knowledge = false;  // top-level K by the vertex's agent
    bool semantic_knowledge = false;   // pre <-> K_a pre on the supplied model
    bool own_language = false;
  };
  std::vector<Entry> entries;
  bool all(PreconditionLocality level) const;
};

PreconditionLocalityReport check_local_preconditions(
    const ActionModel& action, const SimplicialModel* model = nullptr);

enum class ConsensusPolicy { Reset, Majority };

// Binary consensus action for n agents: per agent the keep-1, keep-0 and the
// two reset actions, with all combinations as facets (4n vertices, 4^n
// facets).
ActionModel binary_consensus_action(int n, ConsensusPolicy policy = ConsensusPolicy::Reset);

ActionModel public_announcement(const AgentSet& agents, const FormulaPtr& f);
ActionModel public_assignment(const AgentSet& agents, const AgentId& agent,
                              const AtomName& atom, const FormulaPtr& value);

}  // namespace epiplex
