#include "epiplex/bisim.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "epiplex/duality.hpp"

namespace epiplex {

namespace {

// Generic partition refinement. States carry an initial label (atoms) and a
// family of equivalence relations given as class keys; the result assigns
// each state its bisimilarity block.
struct RefinementInput {
  std::vector<int> initial;                  // label id per state
  std::vector<std::vector<int>> relations;   // [relation][state] -> class id
};

std::vector<int> refine(const RefinementInput& input) {
  const int n = static_cast<int>(input.initial.size());
  std::vector<int> block = input.initial;
  int block_count = 0;
  {
    std::map<int, int> renumber;
    for (int s = 0; s < n; ++s) {
      auto [it, fresh] = renumber.emplace(block[s], block_count);
      if (fresh) ++block_count;
      block[s] = it->second;
    }
  }

  while (true) {
    // Per relation and class: the set of blocks its members currently occupy.
    std::vector<std::vector<int>> touched_sets(n);
    std::vector<std::vector<int>> signature(n);
    for (int s = 0; s < n; ++s) signature[s].push_back(block[s]);

    for (const auto& relation : input.relations) {
      std::map<int, std::set<int>> class_blocks;
      for (int s = 0; s < n; ++s) class_blocks[relation[s]].insert(block[s]);
      std::map<std::set<int>, int> intern;
      for (int s = 0; s < n; ++s) {
        const auto& set = class_blocks[relation[s]];
        auto [it, fresh] = intern.emplace(set, static_cast<int>(intern.size()));
        signature[s].push_back(it->second);
      }
    }

    std::map<std::vector<int>, int> intern;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      auto [it, fresh] = intern.emplace(signature[s], static_cast<int>(intern.size()));
      next[s] = it->second;
    }
    if (static_cast<int>(intern.size()) == block_count) return next;
    block_count = static_cast<int>(intern.size());
    block = std::move(next);
  }
}

int intern_label(std::map<std::string, int>& table, const std::string& label) {
  auto [it, fresh] = table.emplace(label, static_cast<int>(table.size()));
  return it->second;
}

std::string atoms_label(const std::set<AtomName>& atoms) {
  std::string out;
  for (const auto& p : atoms) {
    out += p;
    out += ';';
  }
  return out;
}

// Facets of both models as one state space: c1 facets first, then c2.
struct FacetUnion {
  const SimplicialModel& c1;
  const SimplicialModel& c2;
  int n1;
  int n2;

  FacetUnion(const SimplicialModel& a, const SimplicialModel& b)
      : c1(a), c2(b),
        n1(static_cast<int>(a.facets.size())),
        n2(static_cast<int>(b.facets.size())) {}

  int total() const { return n1 + n2; }

  RefinementInput build() const {
    RefinementInput input;
    std::map<std::string, int> labels;
    for (int f = 0; f < n1; ++f)
      input.initial.push_back(intern_label(labels, atoms_label(c1.simplex_atoms(c1.facets[f]))));
    for (int f = 0; f < n2; ++f)
      input.initial.push_back(intern_label(labels, atoms_label(c2.simplex_atoms(c2.facets[f]))));

    // One equivalence per agent: facets sharing their a-coloured vertex.
    for (std::size_t a = 0; a < c1.agents.size(); ++a) {
      std::vector<int> cls(total());
      std::map<std::string, int> keys;
      for (int f = 0; f < n1; ++f)
        cls[f] = intern_label(keys, "1:" + c1.vertices[c1.facet_vertex(f, static_cast<int>(a))].id);
      for (int f = 0; f < n2; ++f)
        cls[n1 + f] = intern_label(keys, "2:" + c2.vertices[c2.facet_vertex(f, static_cast<int>(a))].id);
      input.relations.push_back(std::move(cls));
    }
    return input;
  }
};

FacetRelation cross_pairs(const FacetUnion& u, const std::vector<int>& block) {
  FacetRelation out;
  for (int f = 0; f < u.n1; ++f)
    for (int g = 0; g < u.n2; ++g)
      if (block[f] == block[u.n1 + g]) out.pairs.emplace_back(f, g);
  return out;
}

void require_same_agents(const AgentSet& a, const AgentSet& b) {
  if (!(a == b))
    throw Error(Errc::AgentSetMismatch, "models have different agent sets");
}

}  // namespace

FacetRelation max_bisimulation(const SimplicialModel& c1, const SimplicialModel& c2) {
  require_same_agents(c1.agents, c2.agents);
  FacetUnion u(c1, c2);
  return cross_pairs(u, refine(u.build()));
}

bool bisimilar_pointed(const SimplicialModel& c1, int facet1,
                       const SimplicialModel& c2, int facet2) {
  auto rel = max_bisimulation(c1, c2);
  return std::find(rel.pairs.begin(), rel.pairs.end(),
                   std::make_pair(facet1, facet2)) != rel.pairs.end();
}

bool total_bisimilar(const SimplicialModel& c1, const SimplicialModel& c2) {
  auto rel = max_bisimulation(c1, c2);
  std::vector<bool> left(c1.facets.size(), false), right(c2.facets.size(), false);
  for (auto [f, g] : rel.pairs) {
    left[f] = true;
    right[g] = true;
  }
  return !rel.empty() &&
         std::all_of(left.begin(), left.end(), [](bool b) { return b; }) &&
         std::all_of(right.begin(), right.end(), [](bool b) { return b; });
}

std::vector<int> unmatched_facets(const SimplicialModel& c1, const SimplicialModel& c2) {
  auto rel = max_bisimulation(c1, c2);
  std::vector<bool> left(c1.facets.size(), false);
  for (auto [f, g] : rel.pairs) left[f] = true;
  std::vector<int> out;
  for (std::size_t f = 0; f < left.size(); ++f)
    if (!left[f]) out.push_back(static_cast<int>(f));
  return out;
}

namespace {

RefinementInput kripke_union_input(const KripkeModel& m1, const KripkeModel& m2,
                                   bool group_clauses) {
  const int n1 = static_cast<int>(m1.states.size());
  const int n2 = static_cast<int>(m2.states.size());
  RefinementInput input;
  std::map<std::string, int> labels;
  for (const auto& s : m1.states)
    input.initial.push_back(intern_label(labels, atoms_label(s.atoms)));
  for (const auto& s : m2.states)
    input.initial.push_back(intern_label(labels, atoms_label(s.atoms)));

  const int agents = static_cast<int>(m1.agents.size());
  std::vector<std::vector<int>> coalitions;
  if (group_clauses) {
    for (int mask = 1; mask < (1 << agents); ++mask) {
      std::vector<int> members;
      for (int a = 0; a < agents; ++a)
        if (mask & (1 << a)) members.push_back(a);
      coalitions.push_back(std::move(members));
    }
  } else {
    for (int a = 0; a < agents; ++a) coalitions.push_back({a});
  }

  for (const auto& members : coalitions) {
    std::vector<int> cls(n1 + n2);
    std::map<std::string, int> keys;
    auto key_for = [&](const KripkeModel& m, int s, const char* side) {
      std::string key = side;
      for (int a : members) key += ":" + std::to_string(m.block_of(a, s));
      return key;
    };
    for (int s = 0; s < n1; ++s) cls[s] = intern_label(keys, key_for(m1, s, "1"));
    for (int s = 0; s < n2; ++s) cls[n1 + s] = intern_label(keys, key_for(m2, s, "2"));
    input.relations.push_back(std::move(cls));
  }
  return input;
}

KripkeRelation kripke_cross_pairs(int n1, int n2, const std::vector<int>& block) {
  KripkeRelation out;
  for (int s = 0; s < n1; ++s)
    for (int t = 0; t < n2; ++t)
      if (block[s] == block[n1 + t]) out.pairs.emplace_back(s, t);
  return out;
}

}  // namespace

KripkeRelation kripke_max_bisimulation(const KripkeModel& m1, const KripkeModel& m2) {
  require_same_agents(m1.agents, m2.agents);
  auto block = refine(kripke_union_input(m1, m2, false));
  return kripke_cross_pairs(static_cast<int>(m1.states.size()),
                            static_cast<int>(m2.states.size()), block);
}

KripkeRelation group_max_bisimulation(const KripkeModel& m1, const KripkeModel& m2) {
  require_same_agents(m1.agents, m2.agents);
  auto block = refine(kripke_union_input(m1, m2, true));
  return kripke_cross_pairs(static_cast<int>(m1.states.size()),
                            static_cast<int>(m2.states.size()), block);
}

FacetRelation group_max_bisimulation(const SimplicialModel& c1, const SimplicialModel& c2) {
  require_same_agents(c1.agents, c2.agents);
  auto k1 = kappa(c1);
  auto k2 = kappa(c2);
  auto rel = group_max_bisimulation(k1.model, k2.model);
  FacetRelation out;
  out.pairs = rel.pairs;  // kappa states are in facet order
  return out;
}

namespace {

std::vector<std::vector<int>> blocks_of(const std::vector<int>& block, int n) {
  std::map<int, std::vector<int>> grouped;
  for (int s = 0; s < n; ++s) grouped[block[s]].push_back(s);
  std::vector<std::vector<int>> out;
  for (auto& [id, members] : grouped) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<int>> bisimilarity_classes(const KripkeModel& m) {
  auto input = kripke_union_input(m, m, false);
  const int n = static_cast<int>(m.states.size());
  // Self-union doubles the state space; keep the first copy.
  auto block = refine(input);
  block.resize(n);
  return blocks_of(block, n);
}

std::vector<std::vector<int>> bisimilarity_classes(const SimplicialModel& c) {
  FacetUnion u(c, c);
  auto block = refine(u.build());
  block.resize(u.n1);
  return blocks_of(block, u.n1);
}

KripkeModel kripke_quotient(const KripkeModel& m) {
  auto classes = bisimilarity_classes(m);
  const int n = static_cast<int>(m.states.size());
  std::vector<int> class_of(n);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int s : classes[c]) class_of[s] = static_cast<int>(c);

  KripkeModel out;
  out.agents = m.agents;
  for (const auto& members : classes) {
    KripkeState state;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) state.id += "+";
      state.id += m.states[members[i]].id;
    }
    state.atoms = m.states[members.front()].atoms;  // atoms agree within a class
    out.states.push_back(std::move(state));
  }

  // Existential lifting, closed into equivalence blocks.
  const int agents = static_cast<int>(m.agents.size());
  const int nc = static_cast<int>(classes.size());
  for (int a = 0; a < agents; ++a) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& blockStates : m.partitions[a])
      for (std::size_t i = 0; i < blockStates.size(); ++i)
        for (std::size_t j = i + 1; j < blockStates.size(); ++j)
          pairs.emplace_back(class_of[blockStates[i]], class_of[blockStates[j]]);
    out.partitions.push_back(close_into_partition(nc, pairs));
  }
  out.finalize();
  return out;
}

SimplicialModel simplicial_quotient(const SimplicialModel& c) {
  auto k = kappa(c);
  auto quotient = kripke_quotient(k.model);
  auto report = analyze(quotient);
  if (!report.is_proper) {
    // Witness: two distinct quotient states related by every agent.
    std::string witness;
    const int n = static_cast<int>(quotient.states.size());
    for (int s = 0; s < n && witness.empty(); ++s)
      for (int t = s + 1; t < n && witness.empty(); ++t) {
        bool all = true;
        for (std::size_t a = 0; a < quotient.agents.size(); ++a)
          if (!quotient.related(static_cast<int>(a), s, t)) {
            all = false;
            break;
          }
        if (all)
          witness = quotient.states[s].id + " / " + quotient.states[t].id;
      }
    throw Error(Errc::QuotientImproper,
                "quotient is improper; classes related by all agents: " + witness);
  }
  return sigma(quotient).model;
}

RelationCheck check_relation(const SimplicialModel& c1, const SimplicialModel& c2,
                             const FacetRelation& r) {
  require_same_agents(c1.agents, c2.agents);
  if (r.empty()) throw Error(Errc::BadInput, "relation is empty");

  auto facet_name = [](const SimplicialModel& c, int f) {
    std::string out = "F" + std::to_string(f) + " {";
    for (std::size_t i = 0; i < c.facets[f].size(); ++i) {
      if (i) out += ",";
      out += c.facets[f][i];
    }
    return out + "}";
  };

  RelationCheck check;
  for (auto [x, xp] : r.pairs) {
    if (c1.simplex_atoms(c1.facets[x]) != c2.simplex_atoms(c2.facets[xp])) {
      check.verdict = RelationClass::Neither;
      check.violated_clause = "atoms";
      check.witness = facet_name(c1, x) + " vs " + facet_name(c2, xp);
      return check;
    }
  }

  auto forth_holds = [&](const SimplicialModel& a, const SimplicialModel& b,
                         const std::vector<std::pair<int, int>>& pairs, int x, int xp,
                         std::string* witness) {
    for (std::size_t ag = 0; ag < a.agents.size(); ++ag) {
      int agent = static_cast<int>(ag);
      int va = a.facet_vertex(x, agent);
      for (int z : a.facets_of_vertex(a.vertices[va].id)) {
        bool matched = false;
        for (auto [u, v] : pairs) {
          if (u != z) continue;
          // Need b-side partner sharing xp's vertex of this colour.
          int vb = b.facet_vertex(xp, agent);
          if (std::find(b.facets_of_vertex(b.vertices[vb].id).begin(),
                        b.facets_of_vertex(b.vertices[vb].id).end(),
                        v) != b.facets_of_vertex(b.vertices[vb].id).end()) {
            matched = true;
            break;
          }
        }
        if (!matched) {
          *witness = "agent " + a.agents.names[ag] + ", " + facet_name(a, x) +
                     " reaches " + facet_name(a, z) + " with no partner from " +
                     facet_name(b, xp);
          return false;
        }
      }
    }
    return true;
  };

  std::vector<std::pair<int, int>> swapped;
  for (auto [x, xp] : r.pairs) swapped.emplace_back(xp, x);

  bool forth_ok = true, back_ok = true;
  std::string forth_witness, back_witness;
  for (auto [x, xp] : r.pairs) {
    if (forth_ok && !forth_holds(c1, c2, r.pairs, x, xp, &forth_witness)) forth_ok = false;
    if (back_ok && !forth_holds(c2, c1, swapped, xp, x, &back_witness)) back_ok = false;
    if (!forth_ok && !back_ok) break;
  }

  if (forth_ok && back_ok) {
    check.verdict = RelationClass::Bisimulation;
  } else if (forth_ok) {
    check.verdict = RelationClass::Simulation;
    check.violated_clause = "back";
    check.witness = back_witness;
  } else {
    check.verdict = RelationClass::Neither;
    check.violated_clause = "forth";
    check.witness = forth_witness;
  }
  return check;
}

namespace {

std::string simplex_name(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + "}";
}

// Exact cover of `universe` by candidate simplices (all sorted vertex lists).
bool exact_cover(const std::vector<VertexId>& universe,
                 const std::vector<Simplex>& candidates, std::set<VertexId> covered) {
  VertexId first;
  bool found = false;
  for (const auto& v : universe)
    if (!covered.count(v)) {
      first = v;
      found = true;
      break;
    }
  if (!found) return true;
  for (const auto& cand : candidates) {
    if (!std::binary_search(cand.begin(), cand.end(), first)) continue;
    bool clash = false;
    for (const auto& v : cand)
      if (covered.count(v)) {
        clash = true;
        break;
      }
    if (clash) continue;
    auto next = covered;
    next.insert(cand.begin(), cand.end());
    if (exact_cover(universe, candidates, std::move(next))) return true;
  }
  return false;
}

}  // namespace

CoveringReport is_covering(const SimplicialModel& c, const VertexMap& f,
                           const SimplicialModel& cprime) {
  CoveringReport report;
  if (!is_simplicial(f, c, cprime))
    throw Error(Errc::NotSimplicialMap, "map does not preserve simplices");
  if (!is_value_preserving(f, c, cprime))
    throw Error(Errc::NotValuePreserving, "map does not preserve valuations");

  if (!is_connected(c)) {
    report.reason = "source complex is not connected";
    return report;
  }

  // Enumerate all simplices of C and of C' once.
  std::set<Simplex> source_simplices;
  for (const auto& facet : c.facets)
    for (auto& face : faces(facet)) source_simplices.insert(face);
  std::set<Simplex> target_simplices;
  for (const auto& facet : cprime.facets)
    for (auto& face : faces(facet)) target_simplices.insert(face);

  for (const auto& xp : target_simplices) {
    std::vector<VertexId> preimage;
    for (const auto& v : c.vertices)
      if (std::binary_search(xp.begin(), xp.end(), f.at(v.id))) preimage.push_back(v.id);
    std::sort(preimage.begin(), preimage.end());

    // Candidate pieces: simplices of C mapped bijectively onto X'.
    std::vector<Simplex> candidates;
    for (const auto& s : source_simplices) {
      if (s.size() != xp.size()) continue;
      Simplex img;
      for (const auto& v : s) img.push_back(f.at(v));
      if (make_simplex(img) == xp) candidates.push_back(s);
    }
    if (!exact_cover(preimage, candidates, {})) {
      report.reason = "preimage of " + simplex_name(xp) +
                      " is not a disjoint union of simplices mapped onto it";
      report.witness_simplex = simplex_name(xp);
      return report;
    }
  }

  report.ok = true;

  // The induced facet relation must be a total bisimulation.
  FacetRelation induced;
  for (std::size_t x = 0; x < c.facets.size(); ++x) {
    Simplex img;
    for (const auto& v : c.facets[x]) img.push_back(f.at(v));
    int target = cprime.facet_index(make_simplex(img));
    if (target >= 0) induced.pairs.emplace_back(static_cast<int>(x), target);
  }
  auto check = check_relation(c, cprime, induced);
  std::vector<bool> left(c.facets.size(), false), right(cprime.facets.size(), false);
  for (auto [x, y] : induced.pairs) {
    left[x] = true;
    right[y] = true;
  }
  report.induced_total_bisimulation =
      check.verdict == RelationClass::Bisimulation &&
      std::all_of(left.begin(), left.end(), [](bool b) { return b; }) &&
      std::all_of(right.begin(), right.end(), [](bool b) { return b; });
  return report;
}

}  // namespace epiplex
