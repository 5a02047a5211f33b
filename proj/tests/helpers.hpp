#pragma once

#include <random>
#include <set>
#include <vector>

#include "epiplex/formula.hpp"
#include "epiplex/scenarios.hpp"
#include "epiplex/semantics.hpp"

namespace epiplex::testing {

inline SimplicialModel model3(std::vector<Vertex> vertices, std::vector<Simplex> facets,
                              std::vector<AgentId> agents = {"a", "b", "c"}) {
  SimplicialModel m;
  m.agents.names = std::move(agents);
  m.vertices = std::move(vertices);
  m.facets = std::move(facets);
  m.finalize();
  return m;
}

inline SimplicialModel get_simplicial(const std::string& name) {
  return std::get<SimplicialModel>(example_model(name));
}

inline KripkeModel get_kripke(const std::string& name) {
  return std::get<KripkeModel>(example_model(name));
}

inline ActionModel get_action(const std::string& name) {
  return std::get<ActionModel>(example_model(name));
}

// Random formula over the given agents/atoms. `depth` bounds modal nesting.
class FormulaGen {
 public:
  FormulaGen(std::vector<AgentId> agents, std::vector<AtomName> atoms,
             bool group_operators = false)
      : agents_(std::move(agents)), atoms_(std::move(atoms)),
        group_(group_operators) {}

  FormulaPtr operator()(std::mt19937_64& rng, int depth) const {
    int limit = group_ ? 9 : 7;
    int pick = depth <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % limit);
    switch (pick) {
      case 0:
        return atoms_.empty() ? fml::tru() : fml::atom(atoms_[rng() % atoms_.size()]);
      case 1:
        return rng() % 2 ? fml::tru() : fml::fls();
      case 2:
        return fml::lnot((*this)(rng, depth - 1));
      case 3:
        return fml::land((*this)(rng, depth - 1), (*this)(rng, depth - 1));
      case 4:
        return fml::lor((*this)(rng, depth - 1), (*this)(rng, depth - 1));
      case 5:
        return fml::implies((*this)(rng, depth - 1), (*this)(rng, depth - 1));
      case 6:
        return fml::know(agents_[rng() % agents_.size()], (*this)(rng, depth - 1));
      case 7:
        return fml::common(random_group(rng), (*this)(rng, depth - 1));
      default:
        return fml::distributed(random_group(rng), (*this)(rng, depth - 1));
    }
  }

 private:
  std::vector<AgentId> random_group(std::mt19937_64& rng) const {
    std::vector<AgentId> group;
    for (const auto& a : agents_)
      if (rng() % 2) group.push_back(a);
    if (group.empty()) group.push_back(agents_[rng() % agents_.size()]);
    return group;
  }

  std::vector<AgentId> agents_;
  std::vector<AtomName> atoms_;
  bool group_;
};

inline FormulaGen generator_for(const SimplicialModel& m, bool group = false) {
  auto atoms = m.all_atoms();
  return FormulaGen(m.agents.names, {atoms.begin(), atoms.end()}, group);
}

inline FormulaGen generator_for(const KripkeModel& m, bool group = false) {
  return FormulaGen(m.agents.names,
                    {m.declared_atoms.begin(), m.declared_atoms.end()}, group);
}

}  // namespace epiplex::testing

namespace epiplex::oracle {

// Brute-force closure of `seed` facets under the neighbour predicate, by
// repeated full rescans. The worklist implementations are checked against it.
template <typename Pred>
std::set<int> naive_closure(int facet_count, std::set<int> seed, Pred neighbours) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y : std::vector<int>(seed.begin(), seed.end()))
      for (int z = 0; z < facet_count; ++z)
        if (!seed.count(z) && neighbours(y, z)) {
          seed.insert(z);
          changed = true;
        }
  }
  return seed;
}

// Greatest-fixpoint bisimulation between facet sets, by pruning the full
// atom-respecting relation. Independent of the partition-refinement path.
std::set<std::pair<int, int>> naive_max_bisimulation(const SimplicialModel& c1,
                                                     const SimplicialModel& c2);

// All ordered partitions of {0..n-1}; Fubini-number cardinality.
std::vector<std::vector<std::vector<int>>> ordered_partitions_of(int n);

}  // namespace epiplex::oracle
