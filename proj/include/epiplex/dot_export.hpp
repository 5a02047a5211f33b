#pragma once

#include <string>

#include "epiplex/complex.hpp"
#include "epiplex/kripke.hpp"

namespace epiplex {

enum class DotGraph { Facets, Vertices };

// Facet graph: one node per facet labelled by its valuation, edges between
// facets sharing an (n-1)-face, labelled with the shared colours. Vertex
// graph: the 1-skeleton with id/atom labels.
std::string to_dot(const SimplicialModel& model, DotGraph kind = DotGraph::Facets);

std::string to_dot(const KripkeModel& model);

}  // namespace epiplex
