#include "epiplex/semantics.hpp"

#include <algorithm>
#include <sstream>

namespace epiplex {

namespace {

std::string group_key(const std::vector<AgentId>& group) {
  std::string out;
  for (const auto& a : group) {
    out += a;
    out += ',';
  }
  return out;
}

std::vector<int> bfs_components(int n, const std::function<std::vector<int>(int)>& neighbours) {
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = next;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int nb : neighbours(cur))
        if (comp[nb] < 0) {
          comp[nb] = next;
          stack.push_back(nb);
        }
    }
    ++next;
  }
  return comp;
}

}  // namespace

struct SimplicialEvaluator::RestrictedCtx {
  SimplicialModel model;
  std::unique_ptr<SimplicialEvaluator> ev;
};

SimplicialEvaluator::SimplicialEvaluator(const SimplicialModel& model,
                                         const BeliefAssignment* belief)
    : model_(model), belief_(belief) {}

SimplicialEvaluator::~SimplicialEvaluator() = default;

int SimplicialEvaluator::agent_index(const AgentId& a) const {
  int i = model_.agents.index_of(a);
  if (i < 0) throw Error(Errc::UnboundFormula, "formula mentions unknown agent " + a);
  return i;
}

std::vector<int> SimplicialEvaluator::knowledge_alternatives(int facet, int agent) const {
  int v = model_.facet_vertex(facet, agent);
  return model_.facets_of_vertex(model_.vertices[v].id);
}

std::vector<int> SimplicialEvaluator::distributed_alternatives(
    int facet, const std::vector<AgentId>& group) const {
  std::vector<int> acc;
  bool first = true;
  for (const auto& a : group) {
    int ai = model_.agents.index_of(a);
    if (ai < 0) throw Error(Errc::UnboundFormula, "formula mentions unknown agent " + a);
    auto alt = knowledge_alternatives(facet, ai);
    std::sort(alt.begin(), alt.end());
    if (first) {
      acc = std::move(alt);
      first = false;
    } else {
      std::vector<int> merged;
      std::set_intersection(acc.begin(), acc.end(), alt.begin(), alt.end(),
                            std::back_inserter(merged));
      acc = std::move(merged);
    }
  }
  return acc;
}

const std::vector<int>& SimplicialEvaluator::components(
    const std::string& key, const std::function<std::vector<int>(int)>& neighbours) {
  auto it = component_cache_.find(key);
  if (it != component_cache_.end()) return it->second;
  auto comp = bfs_components(static_cast<int>(model_.facets.size()), neighbours);
  return component_cache_.emplace(key, std::move(comp)).first->second;
}

const std::vector<int>& SimplicialEvaluator::common_components(
    const std::vector<AgentId>& group) {
  std::vector<int> idx;
  for (const auto& a : group) idx.push_back(agent_index(a));
  return components("C:" + group_key(group), [&](int facet) {
    std::vector<int> out;
    for (int a : idx) {
      auto alt = knowledge_alternatives(facet, a);
      out.insert(out.end(), alt.begin(), alt.end());
    }
    return out;
  });
}

const std::vector<int>& SimplicialEvaluator::family_components(
    const std::vector<std::vector<AgentId>>& family) {
  std::string key = "F:";
  for (const auto& coalition : family) key += group_key(coalition) + "|";
  return components(key, [&](int facet) {
    std::vector<int> out;
    for (const auto& coalition : family) {
      auto alt = distributed_alternatives(facet, coalition);
      out.insert(out.end(), alt.begin(), alt.end());
    }
    return out;
  });
}

const std::vector<int>& SimplicialEvaluator::dim_components(int m) {
  // Facets neighbouring when their intersection has dimension >= m, i.e.
  // they share at least m+1 vertices.
  return components("M:" + std::to_string(m), [&](int facet) {
    std::vector<int> candidates;
    for (const auto& vid : model_.facets[facet]) {
      const auto& fs = model_.facets_of_vertex(vid);
      candidates.insert(candidates.end(), fs.begin(), fs.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<int> out;
    for (int other : candidates)
      if (static_cast<int>(
              simplex_intersection(model_.facets[facet], model_.facets[other]).size()) >= m + 1)
        out.push_back(other);
    return out;
  });
}

namespace {
std::vector<int> members_of_component(const std::vector<int>& comp, int facet) {
  std::vector<int> out;
  for (int y = 0; y < static_cast<int>(comp.size()); ++y)
    if (comp[y] == comp[facet]) out.push_back(y);
  return out;
}
}  // namespace

std::vector<int> SimplicialEvaluator::common_reach(const std::vector<AgentId>& group,
                                                   int facet) {
  return members_of_component(common_components(group), facet);
}

std::vector<int> SimplicialEvaluator::family_reach(
    const std::vector<std::vector<AgentId>>& family, int facet) {
  return members_of_component(family_components(family), facet);
}

std::vector<int> SimplicialEvaluator::dim_reach(int m, int facet) {
  return members_of_component(dim_components(m), facet);
}

bool SimplicialEvaluator::at_facet(int facet, const FormulaPtr& f) {
  if (facet < 0 || facet >= static_cast<int>(model_.facets.size()))
    throw Error(Errc::FaceNotInComplex, "facet index out of range");
  return eval(facet, f);
}

bool SimplicialEvaluator::at_facet(const Simplex& facet, const FormulaPtr& f) {
  int idx = model_.facet_index(facet);
  if (idx < 0)
    throw Error(Errc::FaceNotInComplex, "simplex is not a facet of the model");
  return eval(idx, f);
}

bool SimplicialEvaluator::multipoint(const Simplex& simplex, const FormulaPtr& f) {
  for (int facet : star_indices(model_, simplex))
    if (!eval(facet, f)) return false;
  return true;
}

bool SimplicialEvaluator::restricted(const Simplex& simplex, const FormulaPtr& f) {
  star_indices(model_, simplex);  // face check
  std::set<AgentId> colour_set;
  for (const auto& vid : simplex) colour_set.insert(model_.vertex(vid).agent);
  std::vector<AgentId> colours;
  for (const auto& a : model_.agents.names)
    if (colour_set.count(a)) colours.push_back(a);

  auto tag = tag_for(model_, colours);
  if (!in_language(f, tag)) {
    std::string rendered;
    for (const auto& a : colours) {
      if (!rendered.empty()) rendered += ",";
      rendered += a;
    }
    throw Error(Errc::FormulaOutsideLanguage,
                "formula " + to_string(f) + " is undefined at a simplex coloured {" +
                    rendered + "}");
  }

  std::string key = group_key(colours);
  auto it = restricted_cache_.find(key);
  if (it == restricted_cache_.end()) {
    auto ctx = std::make_unique<RestrictedCtx>();
    ctx->model = restrict_to_agents(model_, colours);
    ctx->ev = std::make_unique<SimplicialEvaluator>(ctx->model, belief_);
    it = restricted_cache_.emplace(key, std::move(ctx)).first;
  }
  return it->second->ev->multipoint(simplex, f);
}

bool SimplicialEvaluator::at_simplex(const Simplex& simplex, const FormulaPtr& f) {
  star_indices(model_, simplex);  // face check
  return simplex_eval(simplex, f);
}

bool SimplicialEvaluator::eval(int facet, const FormulaPtr& f) {
  Key key{f, facet};
  auto hit = memo_.find(key);
  if (hit != memo_.end()) return hit->second;

  bool result = false;
  switch (f->kind) {
    case FKind::True: result = true; break;
    case FKind::False: result = false; break;
    case FKind::Atom:
      result = model_.simplex_atoms(model_.facets[facet]).count(f->name) > 0;
      break;
    case FKind::Not: result = !eval(facet, f->lhs); break;
    case FKind::And: result = eval(facet, f->lhs) && eval(facet, f->rhs); break;
    case FKind::Or: result = eval(facet, f->lhs) || eval(facet, f->rhs); break;
    case FKind::Implies: result = !eval(facet, f->lhs) || eval(facet, f->rhs); break;
    case FKind::K: {
      result = true;
      for (int y : knowledge_alternatives(facet, agent_index(f->name)))
        if (!eval(y, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::KHat: {
      result = false;
      for (int y : knowledge_alternatives(facet, agent_index(f->name)))
        if (eval(y, f->lhs)) {
          result = true;
          break;
        }
      break;
    }
    case FKind::E: {
      result = true;
      for (const auto& a : f->group) {
        bool knows = true;
        for (int y : knowledge_alternatives(facet, agent_index(a)))
          if (!eval(y, f->lhs)) {
            knows = false;
            break;
          }
        if (!knows) {
          result = false;
          break;
        }
      }
      break;
    }
    case FKind::D: {
      result = true;
      for (int y : distributed_alternatives(facet, f->group))
        if (!eval(y, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::C: {
      const auto& comp = common_components(f->group);
      result = true;
      for (int y = 0; y < static_cast<int>(model_.facets.size()); ++y)
        if (comp[y] == comp[facet] && !eval(y, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::CDFam: {
      const auto& comp = family_components(f->family);
      result = true;
      for (int y = 0; y < static_cast<int>(model_.facets.size()); ++y)
        if (comp[y] == comp[facet] && !eval(y, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::CDDim: {
      const auto& comp = dim_components(f->dim);
      result = true;
      for (int y = 0; y < static_cast<int>(model_.facets.size()); ++y)
        if (comp[y] == comp[facet] && !eval(y, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::B:
    case FKind::BHat: {
      if (!belief_)
        throw Error(Errc::BeliefWithoutAssignment,
                    "belief operator without a belief assignment");
      int v = model_.facet_vertex(facet, agent_index(f->name));
      const VertexId& believed = belief_->apply(f->name, model_.vertices[v].id);
      if (f->kind == FKind::B) {
        result = true;
        for (int y : model_.facets_of_vertex(believed))
          if (!eval(y, f->lhs)) {
            result = false;
            break;
          }
      } else {
        result = false;
        for (int y : model_.facets_of_vertex(believed))
          if (eval(y, f->lhs)) {
            result = true;
            break;
          }
      }
      break;
    }
  }
  memo_.emplace(key, result);
  return result;
}

bool SimplicialEvaluator::simplex_eval(const Simplex& simplex, const FormulaPtr& f) {
  // At a facet the simplex clauses coincide with the facet clauses.
  int as_facet = model_.facet_index(simplex);
  if (as_facet >= 0) return eval(as_facet, f);

  auto colour_guard = [&](const AgentId& a) {
    for (const auto& vid : simplex)
      if (model_.vertex(vid).agent == a) return true;
    return false;
  };
  auto vertex_of = [&](const AgentId& a) -> const VertexId& {
    for (const auto& vid : simplex)
      if (model_.vertex(vid).agent == a) return vid;
    throw Error(Errc::FaceNotInComplex, "no vertex of colour " + a);
  };

  switch (f->kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Atom:
      return model_.simplex_atoms(simplex).count(f->name) > 0;
    case FKind::Not: return !simplex_eval(simplex, f->lhs);
    case FKind::And:
      return simplex_eval(simplex, f->lhs) && simplex_eval(simplex, f->rhs);
    case FKind::Or:
      return simplex_eval(simplex, f->lhs) || simplex_eval(simplex, f->rhs);
    case FKind::Implies:
      return !simplex_eval(simplex, f->lhs) || simplex_eval(simplex, f->rhs);
    case FKind::K: {
      if (!colour_guard(f->name)) return false;
      for (int y : model_.facets_of_vertex(vertex_of(f->name)))
        if (!eval(y, f->lhs)) return false;
      return true;
    }
    case FKind::KHat: {
      if (!colour_guard(f->name)) return true;  // dual of the colour guard
      for (int y : model_.facets_of_vertex(vertex_of(f->name)))
        if (eval(y, f->lhs)) return true;
      return false;
    }
    case FKind::E: {
      for (const auto& a : f->group)
        if (!simplex_eval(simplex, fml::know(a, f->lhs))) return false;
      return true;
    }
    case FKind::D: {
      std::vector<int> alternatives;
      bool first = true;
      for (const auto& a : f->group) {
        if (!colour_guard(a)) return false;
        auto alt = model_.facets_of_vertex(vertex_of(a));
        std::sort(alt.begin(), alt.end());
        if (first) {
          alternatives = alt;
          first = false;
        } else {
          std::vector<int> merged;
          std::set_intersection(alternatives.begin(), alternatives.end(), alt.begin(),
                                alt.end(), std::back_inserter(merged));
          alternatives = std::move(merged);
        }
      }
      for (int y : alternatives)
        if (!eval(y, f->lhs)) return false;
      return true;
    }
    case FKind::C:
    case FKind::CDFam:
    case FKind::CDDim: {
      // Closure started from every facet containing the simplex.
      const std::vector<int>& comp =
          f->kind == FKind::C ? common_components(f->group)
          : f->kind == FKind::CDFam ? family_components(f->family)
                                    : dim_components(f->dim);
      std::set<int> roots;
      for (int facet : star_indices(model_, simplex)) roots.insert(comp[facet]);
      for (int y = 0; y < static_cast<int>(model_.facets.size()); ++y)
        if (roots.count(comp[y]) && !eval(y, f->lhs)) return false;
      return true;
    }
    case FKind::B:
    case FKind::BHat: {
      if (!belief_)
        throw Error(Errc::BeliefWithoutAssignment,
                    "belief operator without a belief assignment");
      if (!colour_guard(f->name)) return f->kind == FKind::BHat;
      const VertexId& believed = belief_->apply(f->name, vertex_of(f->name));
      if (f->kind == FKind::B) {
        for (int y : model_.facets_of_vertex(believed))
          if (!eval(y, f->lhs)) return false;
        return true;
      }
      for (int y : model_.facets_of_vertex(believed))
        if (eval(y, f->lhs)) return true;
      return false;
    }
  }
  throw Error(Errc::UnboundFormula, "unhandled formula node");
}

bool evaluate(const SimplicialModel& model, const EvalContext& ctx, const FormulaPtr& f) {
  SimplicialEvaluator ev(model, ctx.belief);
  switch (ctx.mode) {
    case EvalMode::Facet: return ev.at_facet(ctx.point, f);
    case EvalMode::Multipoint: return ev.multipoint(ctx.point, f);
    case EvalMode::Restricted: return ev.restricted(ctx.point, f);
    case EvalMode::Simplex: return ev.at_simplex(ctx.point, f);
  }
  throw Error(Errc::BadInput, "unknown evaluation mode");
}

bool eval_facet(const SimplicialModel& model, const Simplex& facet, const FormulaPtr& f,
                const BeliefAssignment* belief) {
  return SimplicialEvaluator(model, belief).at_facet(facet, f);
}

bool eval_multipoint(const SimplicialModel& model, const Simplex& simplex,
                     const FormulaPtr& f, const BeliefAssignment* belief) {
  return SimplicialEvaluator(model, belief).multipoint(simplex, f);
}

bool eval_restricted(const SimplicialModel& model, const Simplex& simplex,
                     const FormulaPtr& f, const BeliefAssignment* belief) {
  return SimplicialEvaluator(model, belief).restricted(simplex, f);
}

bool eval_simplex(const SimplicialModel& model, const Simplex& simplex,
                  const FormulaPtr& f, const BeliefAssignment* belief) {
  return SimplicialEvaluator(model, belief).at_simplex(simplex, f);
}

KripkeEvaluator::KripkeEvaluator(const KripkeModel& model) : model_(model) {}

int KripkeEvaluator::agent_index(const AgentId& a) const {
  int i = model_.agents.index_of(a);
  if (i < 0) throw Error(Errc::UnboundFormula, "formula mentions unknown agent " + a);
  return i;
}

std::vector<int> KripkeEvaluator::coalition_class(
    int state, const std::vector<AgentId>& group) const {
  std::vector<int> idx;
  for (const auto& a : group) {
    int i = model_.agents.index_of(a);
    if (i < 0) throw Error(Errc::UnboundFormula, "formula mentions unknown agent " + a);
    idx.push_back(i);
  }
  std::vector<int> out;
  for (int t : model_.block_members(idx.front(), model_.block_of(idx.front(), state))) {
    bool all = true;
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (!model_.related(idx[k], state, t)) {
        all = false;
        break;
      }
    if (all) out.push_back(t);
  }
  return out;
}

const std::vector<int>& KripkeEvaluator::components(
    const std::string& key, const std::function<std::vector<int>(int)>& neighbours) {
  auto it = component_cache_.find(key);
  if (it != component_cache_.end()) return it->second;
  auto comp = bfs_components(static_cast<int>(model_.states.size()), neighbours);
  return component_cache_.emplace(key, std::move(comp)).first->second;
}

bool KripkeEvaluator::at_state(int state, const FormulaPtr& f) {
  if (state < 0 || state >= static_cast<int>(model_.states.size()))
    throw Error(Errc::BadInput, "state index out of range");
  return eval(state, f);
}

bool KripkeEvaluator::at_state(const StateId& state, const FormulaPtr& f) {
  int i = model_.state_index(state);
  if (i < 0) throw Error(Errc::BadInput, "unknown state id: " + state);
  return eval(i, f);
}

bool KripkeEvaluator::eval(int state, const FormulaPtr& f) {
  Key key{f, state};
  auto hit = memo_.find(key);
  if (hit != memo_.end()) return hit->second;

  bool result = false;
  const int n = static_cast<int>(model_.states.size());
  switch (f->kind) {
    case FKind::True: result = true; break;
    case FKind::False: result = false; break;
    case FKind::Atom: result = model_.states[state].atoms.count(f->name) > 0; break;
    case FKind::Not: result = !eval(state, f->lhs); break;
    case FKind::And: result = eval(state, f->lhs) && eval(state, f->rhs); break;
    case FKind::Or: result = eval(state, f->lhs) || eval(state, f->rhs); break;
    case FKind::Implies: result = !eval(state, f->lhs) || eval(state, f->rhs); break;
    case FKind::K: {
      int a = agent_index(f->name);
      result = true;
      for (int t : model_.block_members(a, model_.block_of(a, state)))
        if (!eval(t, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::KHat: {
      int a = agent_index(f->name);
      result = false;
      for (int t : model_.block_members(a, model_.block_of(a, state)))
        if (eval(t, f->lhs)) {
          result = true;
          break;
        }
      break;
    }
    case FKind::E: {
      result = true;
      for (const auto& a : f->group)
        if (!eval(state, fml::know(a, f->lhs))) {
          result = false;
          break;
        }
      break;
    }
    case FKind::D: {
      result = true;
      for (int t : coalition_class(state, f->group))
        if (!eval(t, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::C: {
      std::vector<int> idx;
      for (const auto& a : f->group) idx.push_back(agent_index(a));
      const auto& comp = components("C:" + group_key(f->group), [&](int s) {
        std::vector<int> out;
        for (int a : idx) {
          const auto& members = model_.block_members(a, model_.block_of(a, s));
          out.insert(out.end(), members.begin(), members.end());
        }
        return out;
      });
      result = true;
      for (int t = 0; t < n; ++t)
        if (comp[t] == comp[state] && !eval(t, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::CDFam: {
      std::string key = "F:";
      for (const auto& coalition : f->family) key += group_key(coalition) + "|";
      const auto& comp = components(key, [&](int s) {
        std::vector<int> out;
        for (const auto& coalition : f->family) {
          auto members = coalition_class(s, coalition);
          out.insert(out.end(), members.begin(), members.end());
        }
        return out;
      });
      result = true;
      for (int t = 0; t < n; ++t)
        if (comp[t] == comp[state] && !eval(t, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::CDDim: {
      const int m = f->dim;
      const int agents = static_cast<int>(model_.agents.size());
      const auto& comp = components("M:" + std::to_string(m), [&, agents](int s) {
        std::vector<int> out;
        for (int t = 0; t < n; ++t) {
          int shared = 0;
          for (int a = 0; a < agents; ++a)
            if (model_.related(a, s, t)) ++shared;
          if (shared >= m + 1) out.push_back(t);
        }
        return out;
      });
      result = true;
      for (int t = 0; t < n; ++t)
        if (comp[t] == comp[state] && !eval(t, f->lhs)) {
          result = false;
          break;
        }
      break;
    }
    case FKind::B:
    case FKind::BHat:
      throw Error(Errc::BeliefWithoutAssignment,
                  "belief operators need a simplicial model with a belief assignment");
  }
  memo_.emplace(key, result);
  return result;
}

bool eval_kripke(const KripkeModel& model, const StateId& state, const FormulaPtr& f) {
  return KripkeEvaluator(model).at_state(state, f);
}

}  // namespace epiplex
