#pragma once

#include <cstdint>
#include <variant>

#include "epiplex/complex.hpp"
#include "epiplex/dynamics.hpp"
#include "epiplex/kripke.hpp"

namespace epiplex {

// One facet per mud pattern; a child's vertex shows the others' bits.
SimplicialModel muddy_children(int n);

// One vertex per (agent, bit), one facet per bit vector; an octahedron at
// three agents.
SimplicialModel binary_inputs(int n);

// The same situation as an epistemic model: states are bit vectors, agents
// cannot distinguish states agreeing on their own bit.
KripkeModel binary_inputs_kripke(int n);

// A single facet on n agents, no valuation.
SimplicialModel single_facet(int n);

// One round of the chromatic subdivision: a facet per (source facet, ordered
// partition of the agents); a vertex records which source vertices it saw.
SimplicialModel chromatic_subdivision(const SimplicialModel& model);

using ExampleModel = std::variant<SimplicialModel, KripkeModel, ActionModel>;

// Registry of the worked examples used by the test suites, byte-stable.
ExampleModel example_model(const std::string& name);
std::vector<std::string> example_model_names();

// Seeded generators for the property-test driver; deterministic per seed.
SimplicialModel random_simplicial(int agents, int max_facets, std::uint64_t seed);
KripkeModel random_local_proper(int agents, int max_states, std::uint64_t seed);

}  // namespace epiplex
