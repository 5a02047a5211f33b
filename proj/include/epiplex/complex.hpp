#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epiplex/errors.hpp"

namespace epiplex {

using AgentId = std::string;
using VertexId = std::string;
using AtomName = std::string;

// A simplex is a sorted list of distinct vertex ids.
using Simplex = std::vector<VertexId>;

Simplex make_simplex(std::vector<VertexId> ids);
bool simplex_subset(const Simplex& inner, const Simplex& outer);
Simplex simplex_intersection(const Simplex& a, const Simplex& b);

// Ordered list of agent identifiers; the list position is the colour number.
struct AgentSet {
  std::vector<AgentId> names;

  std::size_t size() const { return names.size(); }
  bool contains(const AgentId& a) const;
  int index_of(const AgentId& a) const;  // -1 when absent
  bool operator==(const AgentSet& other) const { return names == other.names; }
};

struct Vertex {
  VertexId id;
  AgentId agent;
  std::set<AtomName> atoms;
};

// Chromatic pure simplicial model. Only facets are stored; faces are implied
// by downward closure. Construct the fields, then call finalize() once.
struct SimplicialModel {
  AgentSet agents;
  std::vector<Vertex> vertices;  // file order
  std::vector<Simplex> facets;   // file order; indices are the facet names F0, F1, ...

  void finalize();

  int vertex_index(const VertexId& v) const;  // -1 when absent
  const Vertex& vertex(const VertexId& v) const;
  bool has_vertex(const VertexId& v) const { return vertex_index(v) >= 0; }
  int facet_index(const Simplex& s) const;  // -1 when absent
  int dimension() const { return static_cast<int>(agents.size()) - 1; }

  // Facets containing the given vertex, by facet index.
  const std::vector<int>& facets_of_vertex(const VertexId& v) const;
  // Union of vertex atoms over a simplex.
  std::set<AtomName> simplex_atoms(const Simplex& s) const;
  // Colour set of a simplex, as agent indices (sorted).
  std::vector<int> colours_of(const Simplex& s) const;
  // The vertex of facet `f` coloured with agent index `a`, or -1.
  int facet_vertex(int f, int a) const;

  // Owning agent of an atom: the declared `_<agent>` suffix when it matches,
  // otherwise the colour of the vertices carrying it (when unambiguous).
  std::optional<AgentId> atom_owner(const AtomName& p) const;
  std::set<AtomName> all_atoms() const;

 private:
  std::map<VertexId, int> vertex_idx_;
  std::map<Simplex, int> facet_idx_;
  std::vector<std::vector<int>> vertex_facets_;
  std::vector<std::vector<int>> facet_vertex_by_colour_;  // [facet][agentIdx]

  friend struct FacetIndexAccess;
};

struct Violation {
  std::string kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> problems;
  bool ok() const { return problems.empty(); }
};

ValidationReport validate(const SimplicialModel& model);

// All nonempty subsets of s.
std::vector<Simplex> faces(const Simplex& s);

// Facets of the model containing s. Throws FaceNotInComplex when s is not a
// face of any facet.
std::vector<Simplex> star(const SimplicialModel& model, const Simplex& s);
std::vector<int> star_indices(const SimplicialModel& model, const Simplex& s);

// All simplices of dimension <= m.
std::vector<Simplex> skeleton(const SimplicialModel& model, int m);

struct ManifoldReport {
  bool is_manifold = false;
  std::string witness;  // offending simplex or disconnected facet pair
};

ManifoldReport is_manifold(const SimplicialModel& model);

// All (n-1)-simplices contained in exactly one facet.
std::vector<Simplex> boundary(const SimplicialModel& model);

SimplicialModel restrict_to_agents(const SimplicialModel& model,
                                   const std::vector<AgentId>& keep);

// Total function between vertex sets of two models.
struct VertexMap {
  std::map<VertexId, VertexId> map;

  const VertexId& at(const VertexId& v) const;
};

bool is_simplicial(const VertexMap& f, const SimplicialModel& src,
                   const SimplicialModel& dst);
bool is_chromatic(const VertexMap& f, const SimplicialModel& src,
                  const SimplicialModel& dst);
bool is_value_preserving(const VertexMap& f, const SimplicialModel& src,
                         const SimplicialModel& dst);
bool is_rigid(const VertexMap& f, const SimplicialModel& src,
              const SimplicialModel& dst);

// Bijective colour- and value-preserving simplicial map with simplicial
// inverse, found by colour-class-ordered backtracking. Desk scale only.
std::optional<VertexMap> is_isomorphic(const SimplicialModel& m1,
                                       const SimplicialModel& m2);

// True when the facet graph (facets sharing at least one vertex) is connected.
bool is_connected(const SimplicialModel& model);

}  // namespace epiplex
