#include "epiplex/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace epiplex {

const ActionVertex& ActionModel::vertex(const VertexId& v) const {
  for (const auto& av : vertices)
    if (av.id == v) return av;
  throw Error(Errc::BadInput, "unknown action vertex " + v);
}

ValidationReport ActionModel::validate() const {
  // Structural checks ride on the simplicial validator.
  SimplicialModel shell;
  shell.agents = agents;
  for (const auto& av : vertices) shell.vertices.push_back({av.id, av.agent, {}});
  shell.facets = facets;
  shell.finalize();
  auto report = epiplex::validate(shell);

  for (const auto& av : vertices)
    for (const auto& [atom, value] : av.post) {
      const std::string suffix = "_" + av.agent;
      if (atom.size() <= suffix.size() ||
          atom.compare(atom.size() - suffix.size(), suffix.size(), suffix) != 0)
        report.problems.push_back(
            {"post", "vertex " + av.id + " assigns atom " + atom +
                         " not owned by agent " + av.agent});
    }
  return report;
}

SimplicialModel product(const SimplicialModel& model, const ActionModel& action) {
  if (!(model.agents == action.agents))
    throw Error(Errc::AgentSetMismatch, "model and action have different agent sets");
  auto structure = action.validate();
  if (!structure.ok())
    throw Error(Errc::BadInput, "invalid action model: " +
                                    structure.problems.front().kind + ": " +
                                    structure.problems.front().detail);

  SimplicialEvaluator ev(model);
  const int nf = static_cast<int>(model.facets.size());
  const int na = static_cast<int>(action.facets.size());

  std::map<VertexId, const ActionVertex*> action_vertex;
  for (const auto& av : action.vertices) action_vertex[av.id] = &av;

  // Joint precondition per action facet.
  std::vector<FormulaPtr> joint_pre;
  for (const auto& af : action.facets) {
    std::vector<FormulaPtr> parts;
    for (const auto& vid : af) parts.push_back(action_vertex.at(vid)->pre);
    joint_pre.push_back(fml::conj(parts));
  }

  std::vector<std::pair<int, int>> surviving;
  for (int x = 0; x < nf; ++x)
    for (int y = 0; y < na; ++y)
      if (ev.at_facet(x, joint_pre[y])) surviving.emplace_back(x, y);
  if (surviving.empty())
    throw Error(Errc::EmptyProduct, "no facet satisfies any action precondition");

  // Source facets a product vertex (v, v') draws its valuation from.
  std::map<std::pair<VertexId, VertexId>, std::set<int>> sources;
  for (auto [x, y] : surviving) {
    for (const auto& vid : model.facets[x]) {
      const auto& agent = model.vertex(vid).agent;
      for (const auto& avid : action.facets[y])
        if (action_vertex.at(avid)->agent == agent)
          sources[{vid, avid}].insert(x);
    }
  }

  SimplicialModel out;
  out.agents = model.agents;
  std::map<std::pair<VertexId, VertexId>, VertexId> names;
  for (const auto& [pair, facets] : sources) {
    const auto& [vid, avid] = pair;
    const Vertex& v = model.vertex(vid);
    const ActionVertex& av = *action_vertex.at(avid);

    // Atoms to decide: the vertex's own plus everything the action assigns.
    std::set<AtomName> universe = v.atoms;
    for (const auto& [atom, value] : av.post) universe.insert(atom);

    Vertex pv;
    pv.id = "(" + vid + "," + avid + ")";
    pv.agent = v.agent;
    for (const auto& atom : universe) {
      auto it = av.post.find(atom);
      FormulaPtr value = it != av.post.end() ? it->second : fml::atom(atom);
      bool first = true, truth = false;
      for (int x : facets) {
        bool here = ev.at_facet(x, value);
        if (first) {
          truth = here;
          first = false;
        } else if (here != truth) {
          throw Error(Errc::PostconditionNotUniform,
                      "postcondition for " + atom + " at product vertex " + pv.id +
                          " disagrees between source facets F" +
                          std::to_string(*facets.begin()) + " and F" + std::to_string(x));
        }
      }
      if (truth) pv.atoms.insert(atom);
    }
    names[pair] = pv.id;
    out.vertices.push_back(std::move(pv));
  }

  std::set<Simplex> product_facets;
  for (auto [x, y] : surviving) {
    Simplex facet;
    for (const auto& vid : model.facets[x]) {
      const auto& agent = model.vertex(vid).agent;
      for (const auto& avid : action.facets[y])
        if (action_vertex.at(avid)->agent == agent)
          facet.push_back(names.at({vid, avid}));
    }
    product_facets.insert(make_simplex(facet));
  }
  out.facets.assign(product_facets.begin(), product_facets.end());
  std::sort(out.vertices.begin(), out.vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  out.finalize();
  return out;
}

std::vector<FormulaPtr> facet_pre_from_vertex_pre(const ActionModel& action) {
  std::vector<FormulaPtr> out;
  for (const auto& facet : action.facets) {
    std::vector<FormulaPtr> parts;
    for (const auto& vid : facet) parts.push_back(action.vertex(vid).pre);
    out.push_back(fml::conj(parts));
  }
  return out;
}

ActionModel vertex_pre_from_facet_pre(const ActionModel& skeleton,
                                      const std::vector<FormulaPtr>& facet_pre) {
  if (facet_pre.size() != skeleton.facets.size())
    throw Error(Errc::BadInput, "one precondition per facet required");
  ActionModel out = skeleton;
  for (auto& av : out.vertices) {
    std::vector<FormulaPtr> parts;
    for (std::size_t fi = 0; fi < out.facets.size(); ++fi)
      if (std::binary_search(out.facets[fi].begin(), out.facets[fi].end(), av.id))
        parts.push_back(facet_pre[fi]);
    av.pre = fml::disj(parts);
  }
  return out;
}

bool PreconditionLocalityReport::all(PreconditionLocality level) const {
  for (const auto& e : entries) {
    if (level == PreconditionLocality::OwnLanguage && !e.own_language) return false;
    if (level == PreconditionLocality::Knowledge &&
        !(e.syntactic_knowledge || e.semantic_knowledge))
      return false;
  }
  return true;
}

PreconditionLocalityReport check_local_preconditions(const ActionModel& action,
                                                     const SimplicialModel* model) {
  PreconditionLocalityReport report;
  for (const auto& av : action.vertices) {
    PreconditionLocalityReport::Entry entry;
    entry.vertex = av.id;
    entry.syntactic_knowledge = av.pre->kind == FKind::K && av.pre->name == av.agent;

    if (model) {
      SimplicialEvaluator ev(*model);
      auto guarded = fml::know(av.agent, av.pre);
      entry.semantic_knowledge = true;
      for (std::size_t x = 0; x < model->facets.size(); ++x)
        if (ev.at_facet(static_cast<int>(x), av.pre) !=
            ev.at_facet(static_cast<int>(x), guarded)) {
          entry.semantic_knowledge = false;
          break;
        }
    }

    LanguageTag tag;
    tag.agents = {av.agent};
    if (model) {
      tag = tag_for(*model, {av.agent});
    } else {
      const std::string suffix = "_" + av.agent;
      for (const auto& p : atoms_of(av.pre))
        if (p.size() > suffix.size() &&
            p.compare(p.size() - suffix.size(), suffix.size(), suffix) == 0)
          tag.atoms.insert(p);
    }
    entry.own_language = in_language(av.pre, tag);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

namespace {

std::vector<AgentId> letter_agents(int n) {
  if (n < 2 || n > 26) throw Error(Errc::BadInput, "agent count must be in [2, 26]");
  std::vector<AgentId> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

FormulaPtr all_ones(const std::vector<AgentId>& agents, bool value) {
  std::vector<FormulaPtr> parts;
  for (const auto& a : agents) {
    auto atom = fml::atom("1_" + a);
    parts.push_back(value ? atom : fml::lnot(atom));
  }
  return fml::conj(parts);
}

// At least k of the agents' bits are 1.
FormulaPtr at_least_ones(const std::vector<AgentId>& agents, int k) {
  std::vector<FormulaPtr> disjuncts;
  const int n = static_cast<int>(agents.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
    std::vector<FormulaPtr> parts;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) parts.push_back(fml::atom("1_" + agents[i]));
    disjuncts.push_back(fml::conj(parts));
  }
  return fml::disj(disjuncts);
}

}  // namespace

ActionModel binary_consensus_action(int n, ConsensusPolicy policy) {
  auto agents = letter_agents(n);
  ActionModel out;
  out.agents.names = agents;

  FormulaPtr ones = all_ones(agents, true);
  FormulaPtr zeros = all_ones(agents, false);
  FormulaPtr majority;
  if (policy == ConsensusPolicy::Majority)
    majority = at_least_ones(agents, (n + 1) / 2);

  for (const auto& a : agents) {
    AtomName bit = "1_" + a;
    FormulaPtr undecided =
        fml::land(fml::lnot(fml::know(a, ones)), fml::lnot(fml::know(a, zeros)));
    ActionVertex w{"w_" + a, a, fml::know(a, ones), {{bit, fml::atom(bit)}}};
    ActionVertex z{"z_" + a, a, fml::know(a, zeros), {{bit, fml::atom(bit)}}};
    ActionVertex x{"x_" + a, a, undecided,
                   {{bit, policy == ConsensusPolicy::Majority ? majority : fml::tru()}}};
    ActionVertex y{"y_" + a, a, undecided,
                   {{bit, policy == ConsensusPolicy::Majority ? majority : fml::fls()}}};
    out.vertices.push_back(std::move(w));
    out.vertices.push_back(std::move(x));
    out.vertices.push_back(std::move(y));
    out.vertices.push_back(std::move(z));
  }

  // All combinations of one action per agent.
  const char* kinds = "wxyz";
  std::vector<int> choice(n, 0);
  while (true) {
    Simplex facet;
    for (int i = 0; i < n; ++i)
      facet.push_back(std::string(1, kinds[choice[i]]) + "_" + agents[i]);
    out.facets.push_back(make_simplex(facet));
    int pos = n - 1;
    while (pos >= 0 && choice[pos] == 3) choice[pos--] = 0;
    if (pos < 0) break;
    ++choice[pos];
  }
  return out;
}

ActionModel public_announcement(const AgentSet& agents, const FormulaPtr& f) {
  ActionModel out;
  out.agents = agents;
  Simplex facet;
  for (const auto& a : agents.names) {
    out.vertices.push_back({a, a, f, {}});
    facet.push_back(a);
  }
  out.facets.push_back(make_simplex(facet));
  return out;
}

ActionModel public_assignment(const AgentSet& agents, const AgentId& agent,
                              const AtomName& atom, const FormulaPtr& value) {
  if (!agents.contains(agent)) throw Error(Errc::UnknownAgent, "unknown agent " + agent);
  ActionModel out;
  out.agents = agents;
  Simplex facet;
  for (const auto& a : agents.names) {
    ActionVertex v{a, a, fml::tru(), {}};
    if (a == agent) v.post[atom] = value;
    out.vertices.push_back(std::move(v));
    facet.push_back(a);
  }
  out.facets.push_back(make_simplex(facet));
  return out;
}

}  // namespace epiplex
