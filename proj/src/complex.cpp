#include "epiplex/complex.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace epiplex {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

Simplex make_simplex(std::vector<VertexId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool simplex_subset(const Simplex& inner, const Simplex& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

Simplex simplex_intersection(const Simplex& a, const Simplex& b) {
  Simplex out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool AgentSet::contains(const AgentId& a) const {
  return std::find(names.begin(), names.end(), a) != names.end();
}

int AgentSet::index_of(const AgentId& a) const {
  auto it = std::find(names.begin(), names.end(), a);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

void SimplicialModel::finalize() {
  vertex_idx_.clear();
  facet_idx_.clear();
  for (std::size_t i = 0; i < vertices.size(); ++i)
    vertex_idx_.emplace(vertices[i].id, static_cast<int>(i));
  for (auto& f : facets) f = make_simplex(f);
  vertex_facets_.assign(vertices.size(), {});
  facet_vertex_by_colour_.assign(facets.size(),
                                 std::vector<int>(agents.size(), -1));
  for (std::size_t fi = 0; fi < facets.size(); ++fi) {
    facet_idx_.emplace(facets[fi], static_cast<int>(fi));
    for (const auto& vid : facets[fi]) {
      int vi = vertex_index(vid);
      if (vi < 0) continue;  // reported by validate()
      vertex_facets_[vi].push_back(static_cast<int>(fi));
      int colour = agents.index_of(vertices[vi].agent);
      if (colour >= 0) facet_vertex_by_colour_[fi][colour] = vi;
    }
  }
}

int SimplicialModel::vertex_index(const VertexId& v) const {
  auto it = vertex_idx_.find(v);
  return it == vertex_idx_.end() ? -1 : it->second;
}

const Vertex& SimplicialModel::vertex(const VertexId& v) const {
  int i = vertex_index(v);
  if (i < 0) throw Error(Errc::BadInput, "unknown vertex id: " + v);
  return vertices[i];
}

int SimplicialModel::facet_index(const Simplex& s) const {
  auto it = facet_idx_.find(s);
  return it == facet_idx_.end() ? -1 : it->second;
}

const std::vector<int>& SimplicialModel::facets_of_vertex(const VertexId& v) const {
  int i = vertex_index(v);
  if (i < 0) throw Error(Errc::BadInput, "unknown vertex id: " + v);
  return vertex_facets_[i];
}

std::set<AtomName> SimplicialModel::simplex_atoms(const Simplex& s) const {
  std::set<AtomName> out;
  for (const auto& vid : s) {
    const auto& atoms = vertex(vid).atoms;
    out.insert(atoms.begin(), atoms.end());
  }
  return out;
}

std::vector<int> SimplicialModel::colours_of(const Simplex& s) const {
  std::vector<int> out;
  for (const auto& vid : s) out.push_back(agents.index_of(vertex(vid).agent));
  std::sort(out.begin(), out.end());
  return out;
}

int SimplicialModel::facet_vertex(int f, int a) const {
  return facet_vertex_by_colour_[f][a];
}

std::optional<AgentId> SimplicialModel::atom_owner(const AtomName& p) const {
  // Declared suffix wins; the longest matching agent name breaks ties between
  // agents like "b" and "ab".
  std::optional<AgentId> best;
  for (const auto& a : agents.names) {
    if (p.size() > a.size() + 1 && p[p.size() - a.size() - 1] == '_' &&
        p.compare(p.size() - a.size(), a.size(), a) == 0) {
      if (!best || a.size() > best->size()) best = a;
    }
  }
  if (best) return best;
  std::optional<AgentId> carrier;
  for (const auto& v : vertices) {
    if (!v.atoms.count(p)) continue;
    if (carrier && *carrier != v.agent) return std::nullopt;  // ambiguous
    carrier = v.agent;
  }
  return carrier;
}

std::set<AtomName> SimplicialModel::all_atoms() const {
  std::set<AtomName> out;
  for (const auto& v : vertices) out.insert(v.atoms.begin(), v.atoms.end());
  return out;
}

ValidationReport validate(const SimplicialModel& model) {
  ValidationReport report;
  auto flag = [&](std::string kind, std::string detail) {
    report.problems.push_back({std::move(kind), std::move(detail)});
  };

  if (model.agents.size() == 0) flag("agents", "agent set is empty");
  {
    std::set<AgentId> seen;
    for (const auto& a : model.agents.names)
      if (!seen.insert(a).second) flag("agents", "duplicate agent: " + a);
  }
  if (model.facets.empty()) flag("facets", "model has no facets");

  std::set<VertexId> ids;
  for (const auto& v : model.vertices) {
    if (!ids.insert(v.id).second) flag("vertices", "duplicate vertex id: " + v.id);
    if (!model.agents.contains(v.agent))
      flag("vertices", "vertex " + v.id + " has unknown agent " + v.agent);
  }

  // Atom ownership must be unambiguous: a suffixed atom sits on its agent's
  // vertices, an unsuffixed one on vertices of a single colour.
  std::map<AtomName, std::set<AgentId>> carriers;
  for (const auto& v : model.vertices)
    for (const auto& p : v.atoms) carriers[p].insert(v.agent);
  for (const auto& [p, agents] : carriers) {
    if (agents.size() > 1)
      flag("atoms", "atom " + p + " appears on vertices of several colours");
    auto owner = model.atom_owner(p);
    if (owner && !agents.count(*owner))
      flag("atoms", "atom " + p + " carried by " + *agents.begin() +
                        " but named for " + *owner);
  }

  const std::size_t n = model.agents.size();
  std::set<VertexId> used;
  for (std::size_t fi = 0; fi < model.facets.size(); ++fi) {
    const auto& f = model.facets[fi];
    std::string fname = "F" + std::to_string(fi) + " {" + join(f, ",") + "}";
    bool resolvable = true;
    for (const auto& vid : f) {
      if (!model.has_vertex(vid)) {
        flag("facets", fname + " references unknown vertex " + vid);
        resolvable = false;
      } else {
        used.insert(vid);
      }
    }
    if (!resolvable) continue;
    if (f.size() != n)
      flag("purity", fname + " has " + std::to_string(f.size()) +
                         " vertices, expected " + std::to_string(n));
    std::map<AgentId, int> per_colour;
    for (const auto& vid : f) per_colour[model.vertex(vid).agent]++;
    for (const auto& [agent, count] : per_colour)
      if (count > 1)
        flag("chromaticity", fname + " has " + std::to_string(count) +
                                 " vertices coloured " + agent);
    for (const auto& a : model.agents.names)
      if (!per_colour.count(a))
        flag("colour-coverage", fname + " misses colour " + a);
  }
  {
    std::set<Simplex> seen;
    for (const auto& f : model.facets)
      if (!seen.insert(f).second)
        flag("facets", "duplicate facet {" + join(f, ",") + "}");
  }
  for (const auto& v : model.vertices)
    if (!used.count(v.id)) flag("dangling", "vertex " + v.id + " is in no facet");

  return report;
}

std::vector<Simplex> faces(const Simplex& s) {
  std::vector<Simplex> out;
  const std::size_t n = s.size();
  for (std::size_t mask = 1; mask < (1ull << n); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) face.push_back(s[i]);
    out.push_back(std::move(face));
  }
  return out;
}

std::vector<int> star_indices(const SimplicialModel& model, const Simplex& s) {
  if (s.empty()) throw Error(Errc::FaceNotInComplex, "empty simplex");
  for (const auto& vid : s)
    if (!model.has_vertex(vid))
      throw Error(Errc::FaceNotInComplex, "unknown vertex " + vid);
  std::vector<int> out;
  for (int fi : model.facets_of_vertex(s.front()))
    if (simplex_subset(s, model.facets[fi])) out.push_back(fi);
  if (out.empty())
    throw Error(Errc::FaceNotInComplex,
                "simplex {" + join(s, ",") + "} is not a face of any facet");
  return out;
}

std::vector<Simplex> star(const SimplicialModel& model, const Simplex& s) {
  std::vector<Simplex> out;
  for (int fi : star_indices(model, s)) out.push_back(model.facets[fi]);
  return out;
}

std::vector<Simplex> skeleton(const SimplicialModel& model, int m) {
  if (m < 0 || m > model.dimension())
    throw Error(Errc::DimensionOutOfRange,
                "skeleton dimension " + std::to_string(m) + " outside [0, " +
                    std::to_string(model.dimension()) + "]");
  std::set<Simplex> seen;
  for (const auto& f : model.facets)
    for (auto& face : faces(f))
      if (static_cast<int>(face.size()) <= m + 1) seen.insert(face);
  return {seen.begin(), seen.end()};
}

namespace {

// All (n-1)-faces of each facet with the list of facets containing them.
std::map<Simplex, std::vector<int>> ridge_membership(const SimplicialModel& model) {
  std::map<Simplex, std::vector<int>> out;
  for (std::size_t fi = 0; fi < model.facets.size(); ++fi) {
    const auto& f = model.facets[fi];
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      Simplex ridge;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (i != drop) ridge.push_back(f[i]);
      out[ridge].push_back(static_cast<int>(fi));
    }
  }
  return out;
}

}  // namespace

ManifoldReport is_manifold(const SimplicialModel& model) {
  auto ridges = ridge_membership(model);
  for (const auto& [ridge, members] : ridges) {
    if (members.size() > 2)
      return {false, "simplex {" + join(ridge, ",") + "} lies in " +
                         std::to_string(members.size()) + " facets"};
  }
  // Path-connectivity through (n-1)-intersections.
  const int nf = static_cast<int>(model.facets.size());
  if (nf == 0) return {false, "no facets"};
  std::vector<std::vector<int>> adj(nf);
  for (const auto& [ridge, members] : ridges)
    if (members.size() == 2) {
      adj[members[0]].push_back(members[1]);
      adj[members[1]].push_back(members[0]);
    }
  std::vector<bool> seen(nf, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int nb : adj[cur])
      if (!seen[nb]) {
        seen[nb] = true;
        stack.push_back(nb);
      }
  }
  for (int fi = 0; fi < nf; ++fi)
    if (!seen[fi])
      return {false, "facets F0 and F" + std::to_string(fi) +
                         " are not joined by a path of (n-1)-intersections"};
  return {true, ""};
}

std::vector<Simplex> boundary(const SimplicialModel& model) {
  std::vector<Simplex> out;
  for (const auto& [ridge, members] : ridge_membership(model))
    if (members.size() == 1) out.push_back(ridge);
  return out;
}

SimplicialModel restrict_to_agents(const SimplicialModel& model,
                                   const std::vector<AgentId>& keep) {
  if (keep.empty()) throw Error(Errc::EmptyAgentSet, "empty agent restriction");
  for (const auto& a : keep)
    if (!model.agents.contains(a))
      throw Error(Errc::UnknownAgent, "unknown agent " + a);

  SimplicialModel out;
  for (const auto& a : model.agents.names)
    if (std::find(keep.begin(), keep.end(), a) != keep.end())
      out.agents.names.push_back(a);

  std::set<VertexId> kept_vertices;
  std::set<Simplex> projected;
  for (const auto& f : model.facets) {
    Simplex proj;
    for (const auto& vid : f)
      if (out.agents.contains(model.vertex(vid).agent)) proj.push_back(vid);
    proj = make_simplex(proj);
    kept_vertices.insert(proj.begin(), proj.end());
    projected.insert(std::move(proj));
  }
  for (const auto& v : model.vertices)
    if (kept_vertices.count(v.id)) out.vertices.push_back(v);
  out.facets.assign(projected.begin(), projected.end());
  out.finalize();
  return out;
}

const VertexId& VertexMap::at(const VertexId& v) const {
  auto it = map.find(v);
  if (it == map.end())
    throw Error(Errc::BadInput, "vertex map is not total: missing " + v);
  return it->second;
}

namespace {

bool map_total(const VertexMap& f, const SimplicialModel& src,
               const SimplicialModel& dst) {
  for (const auto& v : src.vertices) {
    auto it = f.map.find(v.id);
    if (it == f.map.end() || !dst.has_vertex(it->second)) return false;
  }
  return true;
}

Simplex image(const VertexMap& f, const Simplex& s) {
  Simplex out;
  for (const auto& vid : s) out.push_back(f.at(vid));
  return make_simplex(out);
}

bool is_simplex_of(const SimplicialModel& model, const Simplex& s) {
  if (s.empty()) return false;
  for (const auto& vid : s)
    if (!model.has_vertex(vid)) return false;
  for (const auto& f : model.facets)
    if (simplex_subset(s, f)) return true;
  return false;
}

}  // namespace

bool is_simplicial(const VertexMap& f, const SimplicialModel& src,
                   const SimplicialModel& dst) {
  if (!map_total(f, src, dst)) return false;
  for (const auto& x : src.facets)
    if (!is_simplex_of(dst, image(f, x))) return false;
  return true;
}

bool is_chromatic(const VertexMap& f, const SimplicialModel& src,
                  const SimplicialModel& dst) {
  if (!map_total(f, src, dst)) return false;
  if (!is_simplicial(f, src, dst)) return false;
  for (const auto& v : src.vertices)
    if (dst.vertex(f.at(v.id)).agent != v.agent) return false;
  return true;
}

bool is_value_preserving(const VertexMap& f, const SimplicialModel& src,
                         const SimplicialModel& dst) {
  if (!map_total(f, src, dst)) return false;
  for (const auto& v : src.vertices)
    if (dst.vertex(f.at(v.id)).atoms != v.atoms) return false;
  return true;
}

bool is_rigid(const VertexMap& f, const SimplicialModel& src,
              const SimplicialModel& dst) {
  if (!map_total(f, src, dst)) return false;
  for (const auto& x : src.facets)
    if (image(f, x).size() != x.size()) return false;
  return true;
}

namespace {

struct IsoSearch {
  const SimplicialModel& m1;
  const SimplicialModel& m2;
  std::map<VertexId, VertexId> fwd;
  std::map<VertexId, VertexId> bwd;
  std::vector<VertexId> order;

  bool compatible(const VertexId& v, const VertexId& w) {
    const auto& a = m1.vertex(v);
    const auto& b = m2.vertex(w);
    if (a.agent != b.agent || a.atoms != b.atoms) return false;
    return m1.facets_of_vertex(v).size() == m2.facets_of_vertex(w).size();
  }

  // Every fully-mapped facet of m1 must land on a facet of m2.
  bool facets_consistent(const VertexId& v) {
    for (int fi : m1.facets_of_vertex(v)) {
      Simplex img;
      bool complete = true;
      for (const auto& u : m1.facets[fi]) {
        auto it = fwd.find(u);
        if (it == fwd.end()) {
          complete = false;
          break;
        }
        img.push_back(it->second);
      }
      if (complete && m2.facet_index(make_simplex(img)) < 0) return false;
    }
    return true;
  }

  bool extend(std::size_t k) {
    if (k == order.size()) return true;
    const VertexId& v = order[k];
    for (const auto& w : m2.vertices) {
      if (bwd.count(w.id) || !compatible(v, w.id)) continue;
      fwd[v] = w.id;
      bwd[w.id] = v;
      if (facets_consistent(v) && extend(k + 1)) return true;
      fwd.erase(v);
      bwd.erase(w.id);
    }
    return false;
  }
};

}  // namespace

std::optional<VertexMap> is_isomorphic(const SimplicialModel& m1,
                                       const SimplicialModel& m2) {
  if (!(m1.agents == m2.agents)) return std::nullopt;
  if (m1.vertices.size() != m2.vertices.size()) return std::nullopt;
  if (m1.facets.size() != m2.facets.size()) return std::nullopt;

  IsoSearch search{m1, m2, {}, {}, {}};
  // Breadth-first over the facet graph so each new vertex is constrained by
  // already-mapped facet mates.
  std::set<VertexId> queued;
  for (const auto& f : m1.facets)
    for (const auto& vid : f)
      if (queued.insert(vid).second) search.order.push_back(vid);
  for (const auto& v : m1.vertices)
    if (queued.insert(v.id).second) search.order.push_back(v.id);

  if (!search.extend(0)) return std::nullopt;
  VertexMap out;
  out.map = search.fwd;
  // Facet counts match and the map is a vertex bijection sending facets to
  // facets, so the inverse is simplicial as well.
  return out;
}

bool is_connected(const SimplicialModel& model) {
  const int nf = static_cast<int>(model.facets.size());
  if (nf <= 1) return nf == 1;
  std::vector<bool> seen(nf, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (const auto& vid : model.facets[cur])
      for (int nb : model.facets_of_vertex(vid))
        if (!seen[nb]) {
          seen[nb] = true;
          ++reached;
          stack.push_back(nb);
        }
  }
  return reached == nf;
}

}  // namespace epiplex
