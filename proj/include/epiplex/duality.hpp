#pragma once

#include <map>

#include "epiplex/complex.hpp"
#include "epiplex/kripke.hpp"

namespace epiplex {

struct SigmaResult {
  SimplicialModel model;
  // state id -> facet index in model.facets
  std::map<StateId, int> facet_of_state;
};

// Local proper Kripke model to simplicial model: one vertex per equivalence
// class, one facet per state. Vertex ids are "<min state id>@<agent>".
SigmaResult sigma(const KripkeModel& m);

struct KappaResult {
  KripkeModel model;
  // facet index -> state id in model ("F<i>")
  std::map<int, StateId> state_of_facet;
};

// Simplicial model to Kripke model: one state per facet, related for agent a
// exactly when the facets share their a-vertex.
KappaResult kappa(const SimplicialModel& c);

bool roundtrip_check(const KripkeModel& m);
bool roundtrip_check(const SimplicialModel& c);

}  // namespace epiplex
