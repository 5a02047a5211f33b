#include "epiplex/dot_export.hpp"

#include <set>
#include <sstream>

namespace epiplex {

namespace {

std::string atoms_label(const std::set<AtomName>& atoms) {
  std::string out;
  for (const auto& p : atoms) {
    if (!out.empty()) out += " ";
    out += p;
  }
  return out.empty() ? "-" : out;
}

}  // namespace

std::string to_dot(const SimplicialModel& model, DotGraph kind) {
  std::ostringstream out;
  out << "graph {\n";
  if (kind == DotGraph::Facets) {
    const int nf = static_cast<int>(model.facets.size());
    for (int f = 0; f < nf; ++f) {
      out << "  F" << f << " [label=\"F" << f << ": "
          << atoms_label(model.simplex_atoms(model.facets[f])) << "\"];\n";
    }
    const int ridge = static_cast<int>(model.agents.size()) - 1;
    for (int f = 0; f < nf; ++f)
      for (int g = f + 1; g < nf; ++g) {
        auto shared = simplex_intersection(model.facets[f], model.facets[g]);
        if (static_cast<int>(shared.size()) != ridge) continue;
        std::string colours;
        for (const auto& vid : shared) {
          if (!colours.empty()) colours += ",";
          colours += model.vertex(vid).agent;
        }
        out << "  F" << f << " -- F" << g << " [label=\"" << colours << "\"];\n";
      }
  } else {
    for (const auto& v : model.vertices)
      out << "  \"" << v.id << "\" [label=\"" << v.id << ": " << atoms_label(v.atoms)
          << "\"];\n";
    std::set<std::pair<VertexId, VertexId>> edges;
    for (const auto& facet : model.facets)
      for (std::size_t i = 0; i < facet.size(); ++i)
        for (std::size_t j = i + 1; j < facet.size(); ++j)
          edges.emplace(facet[i], facet[j]);
    for (const auto& [from, to] : edges)
      out << "  \"" << from << "\" -- \"" << to << "\";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const KripkeModel& model) {
  std::ostringstream out;
  out << "graph {\n";
  for (const auto& s : model.states)
    out << "  \"" << s.id << "\" [label=\"" << s.id << ": " << atoms_label(s.atoms)
        << "\"];\n";
  // One edge per related pair, labelled with all agents relating it.
  std::map<std::pair<int, int>, std::set<AgentId>> edges;
  for (std::size_t a = 0; a < model.agents.size(); ++a)
    for (const auto& block : model.partitions[a])
      for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j)
          edges[{block[i], block[j]}].insert(model.agents.names[a]);
  for (const auto& [pair, agents] : edges) {
    std::string label;
    for (const auto& a : agents) {
      if (!label.empty()) label += ",";
      label += a;
    }
    out << "  \"" << model.states[pair.first].id << "\" -- \""
        << model.states[pair.second].id << "\" [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace epiplex
