#pragma once

#include <set>
#include <vector>

#include "epiplex/bisim.hpp"
#include "epiplex/formula.hpp"
#include "epiplex/kripke.hpp"

namespace epiplex {

// Iterated distinguishing formulas, one row per refinement level k = 0..|S|.
struct DeltaTable {
  std::vector<StateId> state_ids;
  std::vector<std::vector<FormulaPtr>> rows;           // rows[k][state]
  std::vector<std::vector<std::set<int>>> denotations; // denotations[k][state]

  const FormulaPtr& final_formula(int state) const { return rows.back()[state]; }
  const std::set<int>& final_denotation(int state) const {
    return denotations.back()[state];
  }
};

// Atoms that survive redundancy elimination: drops atoms with full or empty
// extension (on non-singleton models) and all but the lexicographically least
// of each extension-duplicate group.
std::set<AtomName> non_redundant_atoms(const KripkeModel& m);

// Conjunction of non-redundant literals per the state's valuation.
FormulaPtr factual_description(const KripkeModel& m, const StateId& s);

struct DeltaResult {
  DeltaTable table;
  KripkeRelation relation;  // (s, t) with t satisfying every delta_s^k
  bool relation_is_bisimulation = false;
};

DeltaResult delta_global(const KripkeModel& m);

struct LocalDeltaResult {
  KripkeModel localized;
  DeltaTable table;                       // over the localized model
  KripkeRelation relation;
  bool relation_is_bisimulation = false;  // checked, never assumed
};

// Replaces the valuation with fresh class-disjunction variables, one local
// variable per agent per distinct class description.
LocalDeltaResult delta_local(const KripkeModel& m);

// One fresh local variable per equivalence class; states are valued by the
// classes they belong to.
KripkeModel localize_ledent(const KripkeModel& m);

struct SameInfoReport {
  bool equal = false;
  // When unequal: a bisimilarity class of one model that the other splits.
  std::string witness;
};

// Compares the partitions induced by each model's own maximal bisimulation;
// on finite models equal partitions mean the same definable state sets.
SameInfoReport same_information(const KripkeModel& m1, const KripkeModel& m2);

}  // namespace epiplex
