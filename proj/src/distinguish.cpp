#include "epiplex/distinguish.hpp"

#include <algorithm>
#include <map>

namespace epiplex {

namespace {

std::set<int> extension(const KripkeModel& m, const AtomName& p) {
  std::set<int> out;
  for (std::size_t s = 0; s < m.states.size(); ++s)
    if (m.states[s].atoms.count(p)) out.insert(static_cast<int>(s));
  return out;
}

}  // namespace

std::set<AtomName> non_redundant_atoms(const KripkeModel& m) {
  const int n = static_cast<int>(m.states.size());
  std::map<std::set<int>, AtomName> kept_by_extension;
  for (const auto& p : m.declared_atoms) {
    auto ext = extension(m, p);
    if (n > 1 && (ext.empty() || static_cast<int>(ext.size()) == n)) continue;
    auto it = kept_by_extension.find(ext);
    if (it == kept_by_extension.end())
      kept_by_extension.emplace(std::move(ext), p);
    else if (p < it->second)
      it->second = p;  // keep the lexicographically least duplicate
  }
  std::set<AtomName> out;
  for (const auto& [ext, p] : kept_by_extension) out.insert(p);
  return out;
}

namespace {

FormulaPtr literal_description(const std::set<AtomName>& atoms,
                               const std::set<AtomName>& valuation) {
  std::vector<FormulaPtr> parts;
  for (const auto& p : atoms)
    parts.push_back(valuation.count(p) ? fml::atom(p) : fml::lnot(fml::atom(p)));
  return fml::conj(parts);
}

// Per-state restricted valuations, the raw material of factual descriptions.
std::vector<std::set<AtomName>> restricted_valuations(const KripkeModel& m,
                                                      const std::set<AtomName>& atoms) {
  std::vector<std::set<AtomName>> out;
  for (const auto& s : m.states) {
    std::set<AtomName> v;
    for (const auto& p : s.atoms)
      if (atoms.count(p)) v.insert(p);
    out.push_back(std::move(v));
  }
  return out;
}

struct DeltaBuilder {
  const KripkeModel& m;
  int n;
  int agents;

  std::set<int> khat(int agent, const std::set<int>& d) const {
    std::set<int> out;
    for (int s = 0; s < n; ++s)
      for (int t : m.block_members(agent, m.block_of(agent, s)))
        if (d.count(t)) {
          out.insert(s);
          break;
        }
    return out;
  }

  std::set<int> know(int agent, const std::set<int>& d) const {
    std::set<int> out;
    for (int s = 0; s < n; ++s) {
      bool all = true;
      for (int t : m.block_members(agent, m.block_of(agent, s)))
        if (!d.count(t)) {
          all = false;
          break;
        }
      if (all) out.insert(s);
    }
    return out;
  }

  // One refinement step of the recursion shared by both procedures: the base
  // conjunct per state is supplied by the caller.
  void step(const std::vector<FormulaPtr>& base,
            const std::vector<std::set<int>>& base_den,
            const std::vector<FormulaPtr>& prev,
            const std::vector<std::set<int>>& prev_den,
            std::vector<FormulaPtr>* next, std::vector<std::set<int>>* next_den) const {
    next->resize(n);
    next_den->resize(n);
    for (int s = 0; s < n; ++s) {
      std::vector<FormulaPtr> parts{base[s]};
      std::set<int> den = base_den[s];
      for (int a = 0; a < agents; ++a) {
        const auto& members = m.block_members(a, m.block_of(a, s));
        for (int t : members) {
          parts.push_back(fml::know_hat(m.agents.names[a], prev[t]));
          auto d = khat(a, prev_den[t]);
          std::set<int> merged;
          std::set_intersection(den.begin(), den.end(), d.begin(), d.end(),
                                std::inserter(merged, merged.begin()));
          den = std::move(merged);
        }
        std::vector<FormulaPtr> disjuncts;
        std::set<int> union_den;
        for (int t : members) {
          disjuncts.push_back(prev[t]);
          union_den.insert(prev_den[t].begin(), prev_den[t].end());
        }
        parts.push_back(fml::know(m.agents.names[a], fml::disj(disjuncts)));
        auto d = know(a, union_den);
        std::set<int> merged;
        std::set_intersection(den.begin(), den.end(), d.begin(), d.end(),
                              std::inserter(merged, merged.begin()));
        den = std::move(merged);
      }
      (*next)[s] = fml::conj(parts);
      (*next_den)[s] = std::move(den);
    }
  }
};

KripkeRelation relation_from_table(const DeltaTable& table) {
  KripkeRelation rel;
  const int n = static_cast<int>(table.state_ids.size());
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      bool all = true;
      for (const auto& row : table.denotations)
        if (!row[s].count(t)) {
          all = false;
          break;
        }
      if (all) rel.pairs.emplace_back(s, t);
    }
  return rel;
}

bool relation_is_bisimulation(const KripkeModel& m, const KripkeRelation& rel) {
  if (rel.empty()) return false;
  std::set<std::pair<int, int>> r(rel.pairs.begin(), rel.pairs.end());
  for (auto [s, sp] : r) {
    if (m.states[s].atoms != m.states[sp].atoms) return false;
    for (std::size_t a = 0; a < m.agents.size(); ++a) {
      int agent = static_cast<int>(a);
      for (int t : m.block_members(agent, m.block_of(agent, s))) {
        bool matched = false;
        for (int tp : m.block_members(agent, m.block_of(agent, sp)))
          if (r.count({t, tp})) {
            matched = true;
            break;
          }
        if (!matched) return false;
      }
      for (int tp : m.block_members(agent, m.block_of(agent, sp))) {
        bool matched = false;
        for (int t : m.block_members(agent, m.block_of(agent, s)))
          if (r.count({t, tp})) {
            matched = true;
            break;
          }
        if (!matched) return false;
      }
    }
  }
  return true;
}

DeltaTable run_table(const KripkeModel& m, const std::vector<FormulaPtr>& base,
                     const std::vector<std::set<int>>& base_den) {
  const int n = static_cast<int>(m.states.size());
  DeltaBuilder builder{m, n, static_cast<int>(m.agents.size())};
  DeltaTable table;
  for (const auto& s : m.states) table.state_ids.push_back(s.id);
  table.rows.push_back(base);
  table.denotations.push_back(base_den);
  for (int k = 0; k < n; ++k) {
    std::vector<FormulaPtr> next;
    std::vector<std::set<int>> next_den;
    builder.step(base, base_den, table.rows.back(), table.denotations.back(), &next,
                 &next_den);
    table.rows.push_back(std::move(next));
    table.denotations.push_back(std::move(next_den));
  }
  return table;
}

}  // namespace

FormulaPtr factual_description(const KripkeModel& m, const StateId& s) {
  return literal_description(non_redundant_atoms(m), m.state(s).atoms);
}

DeltaResult delta_global(const KripkeModel& m) {
  const int n = static_cast<int>(m.states.size());
  auto atoms = non_redundant_atoms(m);
  auto valuations = restricted_valuations(m, atoms);

  std::vector<FormulaPtr> tau(n);
  std::vector<std::set<int>> tau_den(n);
  for (int s = 0; s < n; ++s) {
    tau[s] = literal_description(atoms, m.states[s].atoms);
    for (int t = 0; t < n; ++t)
      if (valuations[t] == valuations[s]) tau_den[s].insert(t);
  }

  DeltaResult out;
  out.table = run_table(m, tau, tau_den);
  out.relation = relation_from_table(out.table);
  out.relation_is_bisimulation = relation_is_bisimulation(m, out.relation);
  return out;
}

namespace {

// Canonical name of a class disjunction: the set of restricted valuations of
// its member states, rendered as sorted minterms; the full set is "top".
std::string class_canon(const std::set<std::set<AtomName>>& minterms,
                        const std::set<AtomName>& atoms) {
  if (!atoms.empty() && minterms.size() == (1ull << atoms.size())) return "top";
  if (atoms.empty()) return "top";
  std::vector<std::string> rendered;
  for (const auto& minterm : minterms) {
    std::string part;
    for (const auto& p : atoms) {
      if (!part.empty()) part += "_and_";
      part += minterm.count(p) ? p : "not_" + p;
    }
    rendered.push_back(std::move(part));
  }
  std::sort(rendered.begin(), rendered.end());
  std::string out;
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    if (i) out += "_or_";
    out += rendered[i];
  }
  return out;
}

}  // namespace

LocalDeltaResult delta_local(const KripkeModel& m) {
  const int n = static_cast<int>(m.states.size());
  const int agents = static_cast<int>(m.agents.size());
  auto atoms = non_redundant_atoms(m);
  auto valuations = restricted_valuations(m, atoms);

  LocalDeltaResult out;
  out.localized = m;
  for (auto& s : out.localized.states) s.atoms.clear();
  out.localized.declared_atoms.clear();

  for (int a = 0; a < agents; ++a) {
    for (const auto& block : m.partitions[a]) {
      std::set<std::set<AtomName>> minterms;
      for (int t : block) minterms.insert(valuations[t]);
      AtomName fresh = "v_" + class_canon(minterms, atoms) + "_" + m.agents.names[a];
      for (int t : block) out.localized.states[t].atoms.insert(fresh);
      out.localized.declared_atoms.insert(fresh);
    }
  }
  out.localized.finalize();

  // delta^0 is the conjunction of the state's fresh local variables.
  std::vector<FormulaPtr> base(n);
  std::vector<std::set<int>> base_den(n);
  for (int s = 0; s < n; ++s) {
    std::vector<FormulaPtr> parts;
    for (const auto& p : out.localized.states[s].atoms) parts.push_back(fml::atom(p));
    base[s] = fml::conj(parts);
    for (int t = 0; t < n; ++t) {
      bool all = true;
      for (const auto& p : out.localized.states[s].atoms)
        if (!out.localized.states[t].atoms.count(p)) {
          all = false;
          break;
        }
      if (all) base_den[s].insert(t);
    }
  }

  out.table = run_table(out.localized, base, base_den);
  out.relation = relation_from_table(out.table);
  out.relation_is_bisimulation = relation_is_bisimulation(out.localized, out.relation);
  return out;
}

KripkeModel localize_ledent(const KripkeModel& m) {
  KripkeModel out = m;
  for (auto& s : out.states) s.atoms.clear();
  out.declared_atoms.clear();
  for (std::size_t a = 0; a < m.agents.size(); ++a) {
    for (const auto& block : m.partitions[a]) {
      AtomName fresh = "c";
      std::vector<StateId> ids;
      for (int t : block) ids.push_back(m.states[t].id);
      std::sort(ids.begin(), ids.end());
      for (const auto& id : ids) fresh += "_" + id;
      fresh += "_" + m.agents.names[a];
      for (int t : block) out.states[t].atoms.insert(fresh);
      out.declared_atoms.insert(fresh);
    }
  }
  out.finalize();
  return out;
}

SameInfoReport same_information(const KripkeModel& m1, const KripkeModel& m2) {
  std::set<StateId> ids1, ids2;
  for (const auto& s : m1.states) ids1.insert(s.id);
  for (const auto& s : m2.states) ids2.insert(s.id);
  if (ids1 != ids2)
    throw Error(Errc::StateSetMismatch, "models have different state sets");

  auto partition_ids = [](const KripkeModel& m) {
    std::set<std::set<StateId>> out;
    for (const auto& block : bisimilarity_classes(m)) {
      std::set<StateId> ids;
      for (int s : block) ids.insert(m.states[s].id);
      out.insert(std::move(ids));
    }
    return out;
  };

  auto p1 = partition_ids(m1);
  auto p2 = partition_ids(m2);
  SameInfoReport report;
  report.equal = p1 == p2;
  if (!report.equal) {
    for (const auto& block : p1)
      if (!p2.count(block)) {
        std::string rendered = "{";
        for (const auto& id : block) rendered += id + " ";
        rendered.back() = '}';
        report.witness = rendered;
        break;
      }
    if (report.witness.empty())
      for (const auto& block : p2)
        if (!p1.count(block)) {
          std::string rendered = "{";
          for (const auto& id : block) rendered += id + " ";
          rendered.back() = '}';
          report.witness = rendered;
          break;
        }
  }
  return report;
}

}  // namespace epiplex
