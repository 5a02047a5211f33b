#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epiplex/complex.hpp"
#include "epiplex/kripke.hpp"

namespace epiplex {

// Relation between facets of two simplicial models, by facet index.
struct FacetRelation {
  std::vector<std::pair<int, int>> pairs;
  bool empty() const { return pairs.empty(); }
};

// Largest simplicial bisimulation between C and C', found by partition
// refinement over the disjoint union. Empty means not bisimilar.
FacetRelation max_bisimulation(const SimplicialModel& c1, const SimplicialModel& c2);

bool bisimilar_pointed(const SimplicialModel& c1, int facet1,
                       const SimplicialModel& c2, int facet2);
bool total_bisimilar(const SimplicialModel& c1, const SimplicialModel& c2);

// Facets of c1 with no partner under the maximal bisimulation; empty iff the
// relation is total on the left.
std::vector<int> unmatched_facets(const SimplicialModel& c1, const SimplicialModel& c2);

struct KripkeRelation {
  std::vector<std::pair<int, int>> pairs;
  bool empty() const { return pairs.empty(); }
};

KripkeRelation kripke_max_bisimulation(const KripkeModel& m1, const KripkeModel& m2);

// Bisimilarity classes of a single model, as a partition of state indices.
std::vector<std::vector<int>> bisimilarity_classes(const KripkeModel& m);
std::vector<std::vector<int>> bisimilarity_classes(const SimplicialModel& c);

// Quotient under bisimilarity; merged states are named by joining the member
// ids with '+'.
KripkeModel kripke_quotient(const KripkeModel& m);

// sigma(quotient(kappa(C))). Throws QuotientImproper when the Kripke quotient
// is not proper.
SimplicialModel simplicial_quotient(const SimplicialModel& c);

// Refinement with forth/back for every nonempty coalition B (common
// refinements of the members' partitions). Exponential in |A|; desk scale.
KripkeRelation group_max_bisimulation(const KripkeModel& m1, const KripkeModel& m2);
FacetRelation group_max_bisimulation(const SimplicialModel& c1, const SimplicialModel& c2);

enum class RelationClass { Bisimulation, Simulation, Neither };

struct RelationCheck {
  RelationClass verdict = RelationClass::Neither;
  std::string violated_clause;  // "atoms", "forth" or "back" when not a bisimulation
  std::string witness;
};

RelationCheck check_relation(const SimplicialModel& c1, const SimplicialModel& c2,
                             const FacetRelation& r);

struct CoveringReport {
  bool ok = false;
  std::string reason;
  std::string witness_simplex;       // simplex of C' whose preimage fails
  bool induced_total_bisimulation = false;
};

// Covering check: C connected and, for every simplex X' of C', the preimage
// vertex set splits into pairwise disjoint simplices of C mapped onto X'.
CoveringReport is_covering(const SimplicialModel& c, const VertexMap& f,
                           const SimplicialModel& cprime);

}  // namespace epiplex
