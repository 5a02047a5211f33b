#pragma once

#include <functional>
#include <map>
#include <memory>
#include <unordered_map>

#include "epiplex/belief.hpp"
#include "epiplex/complex.hpp"
#include "epiplex/formula.hpp"
#include "epiplex/kripke.hpp"

namespace epiplex {

enum class EvalMode { Facet, Multipoint, Restricted, Simplex };

// A point of evaluation: the mode, the simplex it applies to, and an optional
// belief assignment. Facet mode requires the point to be a facet.
struct EvalContext {
  EvalMode mode = EvalMode::Facet;
  Simplex point;
  const BeliefAssignment* belief = nullptr;
};

bool evaluate(const SimplicialModel& model, const EvalContext& ctx, const FormulaPtr& f);

// Evaluation over one simplicial model. An instance owns the per-query
// caches; reuse it for many formulas against the same model.
class SimplicialEvaluator {
 public:
  explicit SimplicialEvaluator(const SimplicialModel& model,
                               const BeliefAssignment* belief = nullptr);
  ~SimplicialEvaluator();

  bool at_facet(int facet, const FormulaPtr& f);
  bool at_facet(const Simplex& facet, const FormulaPtr& f);
  // Conjunction of facet truth over the star of the simplex.
  bool multipoint(const Simplex& simplex, const FormulaPtr& f);
  // Language-restricted semantics: multipoint inside the restriction of the
  // model to the simplex's colours. Throws FormulaOutsideLanguage.
  bool restricted(const Simplex& simplex, const FormulaPtr& f);
  // Direct simplex semantics: atoms hold when some vertex carries them,
  // knowledge requires membership of the agent's colour.
  bool at_simplex(const Simplex& simplex, const FormulaPtr& f);

  // Reachable facet sets of the closure operators (sorted facet indices).
  std::vector<int> common_reach(const std::vector<AgentId>& group, int facet);
  std::vector<int> family_reach(const std::vector<std::vector<AgentId>>& family, int facet);
  std::vector<int> dim_reach(int m, int facet);

  const SimplicialModel& model() const { return model_; }

 private:
  // Keys hold the node alive so a recycled allocation can never alias a
  // cached entry.
  struct Key {
    FormulaPtr node;
    int facet;
    bool operator==(const Key& o) const {
      return node.get() == o.node.get() && facet == o.facet;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>()(k.node.get()) * 31 ^ std::hash<int>()(k.facet);
    }
  };
  struct RestrictedCtx;

  const SimplicialModel& model_;
  const BeliefAssignment* belief_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  // Facet reachability components, keyed by a rendering of the closure kind.
  std::map<std::string, std::vector<int>> component_cache_;
  std::map<std::string, std::unique_ptr<RestrictedCtx>> restricted_cache_;

  bool eval(int facet, const FormulaPtr& f);
  bool simplex_eval(const Simplex& simplex, const FormulaPtr& f);
  std::vector<int> knowledge_alternatives(int facet, int agent) const;
  std::vector<int> distributed_alternatives(int facet,
                                            const std::vector<AgentId>& group) const;
  const std::vector<int>& components(const std::string& key,
                                     const std::function<std::vector<int>(int)>& neighbours);
  const std::vector<int>& common_components(const std::vector<AgentId>& group);
  const std::vector<int>& family_components(const std::vector<std::vector<AgentId>>& family);
  const std::vector<int>& dim_components(int m);
  int agent_index(const AgentId& a) const;
};

bool eval_facet(const SimplicialModel& model, const Simplex& facet, const FormulaPtr& f,
                const BeliefAssignment* belief = nullptr);
bool eval_multipoint(const SimplicialModel& model, const Simplex& simplex, const FormulaPtr& f,
                     const BeliefAssignment* belief = nullptr);
bool eval_restricted(const SimplicialModel& model, const Simplex& simplex, const FormulaPtr& f,
                     const BeliefAssignment* belief = nullptr);
bool eval_simplex(const SimplicialModel& model, const Simplex& simplex, const FormulaPtr& f,
                  const BeliefAssignment* belief = nullptr);

class KripkeEvaluator {
 public:
  explicit KripkeEvaluator(const KripkeModel& model);

  bool at_state(int state, const FormulaPtr& f);
  bool at_state(const StateId& state, const FormulaPtr& f);

  const KripkeModel& model() const { return model_; }

 private:
  struct Key {
    FormulaPtr node;
    int state;
    bool operator==(const Key& o) const {
      return node.get() == o.node.get() && state == o.state;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>()(k.node.get()) * 31 ^ std::hash<int>()(k.state);
    }
  };

  const KripkeModel& model_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::map<std::string, std::vector<int>> component_cache_;

  bool eval(int state, const FormulaPtr& f);
  std::vector<int> coalition_class(int state, const std::vector<AgentId>& group) const;
  const std::vector<int>& components(const std::string& key,
                                     const std::function<std::vector<int>(int)>& neighbours);
  int agent_index(const AgentId& a) const;
};

bool eval_kripke(const KripkeModel& model, const StateId& state, const FormulaPtr& f);

}  // namespace epiplex
