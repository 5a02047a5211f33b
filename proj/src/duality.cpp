#include "epiplex/duality.hpp"

#include <algorithm>

namespace epiplex {

SigmaResult sigma(const KripkeModel& m) {
  auto report = analyze(m);
  if (!report.is_local || !report.is_proper)
    throw Error(Errc::NotLocalProper, "sigma requires a local proper model");

  // An atom local for several agents goes to its name-suffix agent when that
  // agent qualifies, otherwise to the first local agent in colour order.
  std::map<AtomName, int> owner;
  for (const auto& [p, holders] : report.local_for) {
    int chosen = -1;
    for (std::size_t a = 0; a < m.agents.size(); ++a) {
      const auto& name = m.agents.names[a];
      if (p.size() > name.size() + 1 && p[p.size() - name.size() - 1] == '_' &&
          p.compare(p.size() - name.size(), name.size(), name) == 0 &&
          holders.count(name))
        if (chosen < 0 || name.size() > m.agents.names[chosen].size())
          chosen = static_cast<int>(a);
    }
    if (chosen < 0)
      for (std::size_t a = 0; a < m.agents.size(); ++a)
        if (holders.count(m.agents.names[a])) {
          chosen = static_cast<int>(a);
          break;
        }
    owner[p] = chosen;
  }

  SigmaResult out;
  out.model.agents = m.agents;

  const int agents = static_cast<int>(m.agents.size());
  // Class vertex ids: minimal member state id + "@" + agent.
  std::vector<std::map<int, VertexId>> class_vertex(agents);
  for (int a = 0; a < agents; ++a) {
    for (std::size_t b = 0; b < m.partitions[a].size(); ++b) {
      StateId min_id = m.states[m.partitions[a][b].front()].id;
      for (int s : m.partitions[a][b]) min_id = std::min(min_id, m.states[s].id);
      VertexId vid = min_id + "@" + m.agents.names[a];
      class_vertex[a][static_cast<int>(b)] = vid;

      Vertex v;
      v.id = vid;
      v.agent = m.agents.names[a];
      int rep = m.partitions[a][b].front();
      for (const auto& p : m.states[rep].atoms)
        if (owner.count(p) && owner[p] == a) v.atoms.insert(p);
      out.model.vertices.push_back(std::move(v));
    }
  }

  for (std::size_t s = 0; s < m.states.size(); ++s) {
    Simplex facet;
    for (int a = 0; a < agents; ++a)
      facet.push_back(class_vertex[a][m.block_of(a, static_cast<int>(s))]);
    facet = make_simplex(facet);
    out.model.facets.push_back(facet);
    out.facet_of_state[m.states[s].id] = static_cast<int>(s);
  }
  out.model.finalize();
  return out;
}

KappaResult kappa(const SimplicialModel& c) {
  KappaResult out;
  out.model.agents = c.agents;

  const int nf = static_cast<int>(c.facets.size());
  for (int f = 0; f < nf; ++f) {
    KripkeState s;
    s.id = "F" + std::to_string(f);
    s.atoms = c.simplex_atoms(c.facets[f]);
    out.model.states.push_back(std::move(s));
    out.state_of_facet[f] = "F" + std::to_string(f);
  }

  // kappa(X) ~_a kappa(Y) iff X and Y share their a-vertex, so the blocks of
  // agent a are exactly the facet groups per a-coloured vertex.
  for (std::size_t a = 0; a < c.agents.size(); ++a) {
    std::map<int, std::vector<int>> blocks;
    for (int f = 0; f < nf; ++f)
      blocks[c.facet_vertex(f, static_cast<int>(a))].push_back(f);
    std::vector<std::vector<int>> partition;
    for (auto& [vid, members] : blocks) partition.push_back(std::move(members));
    out.model.partitions.push_back(std::move(partition));
  }
  out.model.finalize();
  return out;
}

bool roundtrip_check(const KripkeModel& m) {
  auto simp = sigma(m);
  auto back = kappa(simp.model);
  return kripke_isomorphic(back.model, m).has_value();
}

bool roundtrip_check(const SimplicialModel& c) {
  auto krip = kappa(c);
  auto back = sigma(krip.model);
  return is_isomorphic(back.model, c).has_value();
}

}  // namespace epiplex
