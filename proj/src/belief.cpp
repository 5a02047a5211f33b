#include "epiplex/belief.hpp"

#include <algorithm>

#include "epiplex/duality.hpp"

namespace epiplex {

const VertexId& BeliefAssignment::apply(const AgentId& a, const VertexId& v) const {
  auto fa = functions.find(a);
  if (fa == functions.end()) return v;
  auto it = fa->second.find(v);
  return it == fa->second.end() ? v : it->second;
}

BeliefReport validate_assignment(const SimplicialModel& model,
                                 const BeliefAssignment& bf) {
  BeliefReport report;
  auto flag = [&](std::string kind, std::string detail) {
    report.problems.push_back({std::move(kind), std::move(detail)});
  };

  for (const auto& [agent, fa] : bf.functions) {
    if (!model.agents.contains(agent)) {
      flag("agent", "unknown agent " + agent);
      continue;
    }
    for (const auto& [from, to] : fa) {
      if (!model.has_vertex(from)) {
        flag("vertex", "unknown vertex " + from);
        continue;
      }
      if (!model.has_vertex(to)) {
        flag("vertex", "unknown vertex " + to);
        continue;
      }
      if (model.vertex(from).agent != agent)
        flag("colour", "f_" + agent + " defined on " + from + " coloured " +
                           model.vertex(from).agent);
      if (model.vertex(to).agent != agent)
        flag("colour", "f_" + agent + "(" + from + ") = " + to + " coloured " +
                           model.vertex(to).agent);
    }
    // Idempotence over the full vertex set, unlisted vertices being fixed.
    for (const auto& v : model.vertices) {
      if (v.agent != agent) continue;
      const auto& once = bf.apply(agent, v.id);
      const auto& twice = bf.apply(agent, once);
      if (once != twice)
        flag("idempotence", "f_" + agent + "(" + v.id + ") = " + once +
                                " but f_" + agent + "(" + once + ") = " + twice);
    }
  }
  return report;
}

std::map<AgentId, bool> is_locally_correct(const SimplicialModel& model,
                                           const BeliefAssignment& bf) {
  std::map<AgentId, bool> out;
  for (const auto& agent : model.agents.names) {
    bool correct = true;
    for (const auto& v : model.vertices) {
      if (v.agent != agent) continue;
      const auto& target = model.vertex(bf.apply(agent, v.id));
      // Vertex atoms are the agent's own local variables already.
      if (v.atoms != target.atoms) {
        correct = false;
        break;
      }
    }
    out[agent] = correct;
  }
  return out;
}

Kd45Result derive_kd45(const SimplicialModel& model, const BeliefAssignment& bf) {
  auto report = validate_assignment(model, bf);
  if (!report.ok())
    throw Error(Errc::InvalidBeliefAssignment,
                report.problems.front().kind + ": " + report.problems.front().detail);

  Kd45Result out;
  out.base = kappa(model).model;
  const int nf = static_cast<int>(model.facets.size());

  out.relations.resize(model.agents.size());
  for (std::size_t a = 0; a < model.agents.size(); ++a) {
    const auto& agent = model.agents.names[a];
    for (int x = 0; x < nf; ++x) {
      int va = model.facet_vertex(x, static_cast<int>(a));
      const VertexId& believed = bf.apply(agent, model.vertices[va].id);
      for (int y : model.facets_of_vertex(believed))
        out.relations[a].emplace_back(x, y);
    }
    std::sort(out.relations[a].begin(), out.relations[a].end());
  }

  out.serial = out.transitive = out.euclidean = true;
  for (const auto& rel : out.relations) {
    std::vector<std::vector<bool>> r(nf, std::vector<bool>(nf, false));
    for (auto [x, y] : rel) r[x][y] = true;
    for (int x = 0; x < nf; ++x) {
      bool any = false;
      for (int y = 0; y < nf; ++y) any = any || r[x][y];
      if (!any) out.serial = false;
    }
    for (int x = 0; x < nf; ++x)
      for (int y = 0; y < nf; ++y) {
        if (!r[x][y]) continue;
        for (int z = 0; z < nf; ++z) {
          if (r[y][z] && !r[x][z]) out.transitive = false;
          if (r[x][z] && !r[y][z]) out.euclidean = false;
        }
      }
  }
  return out;
}

}  // namespace epiplex
