#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "epiplex/belief.hpp"
#include "epiplex/bisim.hpp"
#include "epiplex/complex.hpp"
#include "epiplex/dynamics.hpp"
#include "epiplex/kripke.hpp"

namespace epiplex {

using nlohmann::json;

enum class ModelKind { Simplicial, Kripke, Action };

ModelKind detect_kind(const json& j);

SimplicialModel simplicial_from_json(const json& j);
// Canonical form: vertices and facets in lexicographic id order.
json to_json(const SimplicialModel& model);

// Relation entries may be partition blocks or related pairs; pair lists are
// closed into equivalence classes with a warning on `warnings`.
KripkeModel kripke_from_json(const json& j, std::ostream* warnings = nullptr);
json to_json(const KripkeModel& model);

ActionModel action_from_json(const json& j);
json to_json(const ActionModel& model);

BeliefAssignment belief_from_json(const json& j);
json to_json(const BeliefAssignment& bf);

// Sidecar forms: {"pairs": [["F0","F2"], ...]} and {"map": {"v": "w"}}.
FacetRelation relation_from_json(const json& j, const SimplicialModel& c1,
                                 const SimplicialModel& c2);
VertexMap vertex_map_from_json(const json& j);

json load_json_file(const std::string& path, std::istream& stdin_stream);

// Facet reference: an index ("F0" or "0") or comma-joined vertex ids.
int parse_facet_ref(const SimplicialModel& model, const std::string& ref);
// Point reference for --at: a facet index, a vertex id, or comma-joined ids.
Simplex parse_point(const SimplicialModel& model, const std::string& ref);

}  // namespace epiplex
