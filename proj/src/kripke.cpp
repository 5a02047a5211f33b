#include "epiplex/kripke.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace epiplex {

void KripkeModel::finalize() {
  state_idx_.clear();
  for (std::size_t i = 0; i < states.size(); ++i)
    state_idx_.emplace(states[i].id, static_cast<int>(i));
  if (declared_atoms.empty())
    for (const auto& s : states)
      declared_atoms.insert(s.atoms.begin(), s.atoms.end());

  state_block_.assign(partitions.size(), std::vector<int>(states.size(), -1));
  for (std::size_t a = 0; a < partitions.size(); ++a) {
    for (auto& block : partitions[a]) std::sort(block.begin(), block.end());
    std::sort(partitions[a].begin(), partitions[a].end());
    for (std::size_t b = 0; b < partitions[a].size(); ++b)
      for (int s : partitions[a][b]) state_block_[a][s] = static_cast<int>(b);
  }
}

int KripkeModel::state_index(const StateId& s) const {
  auto it = state_idx_.find(s);
  return it == state_idx_.end() ? -1 : it->second;
}

const KripkeState& KripkeModel::state(const StateId& s) const {
  int i = state_index(s);
  if (i < 0) throw Error(Errc::BadInput, "unknown state id: " + s);
  return states[i];
}

int KripkeModel::block_of(int agent, int state) const {
  return state_block_[agent][state];
}

const std::vector<int>& KripkeModel::block_members(int agent, int block) const {
  return partitions[agent][block];
}

std::vector<std::vector<int>> close_into_partition(
    int state_count, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> parent(state_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : pairs) parent[find(a)] = find(b);
  std::map<int, std::vector<int>> blocks;
  for (int s = 0; s < state_count; ++s) blocks[find(s)].push_back(s);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : blocks) out.push_back(std::move(members));
  return out;
}

LocalityReport analyze(const KripkeModel& model) {
  LocalityReport report;
  const int n = static_cast<int>(model.states.size());

  for (const auto& p : model.declared_atoms) {
    std::set<AgentId> holders;
    for (std::size_t a = 0; a < model.agents.size(); ++a) {
      bool local = true;
      for (const auto& block : model.partitions[a]) {
        bool first = model.states[block.front()].atoms.count(p) > 0;
        for (int s : block)
          if ((model.states[s].atoms.count(p) > 0) != first) {
            local = false;
            break;
          }
        if (!local) break;
      }
      if (local) holders.insert(model.agents.names[a]);
    }
    report.local_for[p] = std::move(holders);
  }
  report.is_local = true;
  for (const auto& [p, holders] : report.local_for)
    if (holders.empty()) report.is_local = false;

  report.is_proper = true;
  for (int s = 0; s < n && report.is_proper; ++s)
    for (int t = s + 1; t < n && report.is_proper; ++t) {
      bool all = true;
      for (std::size_t a = 0; a < model.agents.size(); ++a)
        if (!model.related(static_cast<int>(a), s, t)) {
          all = false;
          break;
        }
      if (all) report.is_proper = false;
    }

  report.is_factual = true;
  for (int s = 0; s < n && report.is_factual; ++s)
    for (int t = s + 1; t < n; ++t)
      if (model.states[s].atoms == model.states[t].atoms) {
        report.is_factual = false;
        break;
      }

  return report;
}

DistributedView to_distributed(const KripkeModel& model) {
  auto report = analyze(model);
  if (!report.is_local || !report.is_proper)
    throw Error(Errc::NotLocalProper,
                "distributed view requires a local proper model");

  DistributedView view;
  const int agents = static_cast<int>(model.agents.size());
  for (std::size_t s = 0; s < model.states.size(); ++s) {
    std::vector<int> tuple;
    for (int a = 0; a < agents; ++a)
      tuple.push_back(model.block_of(a, static_cast<int>(s)));
    view.tuples.push_back(std::move(tuple));
  }

  view.local_valuations.resize(agents);
  for (int a = 0; a < agents; ++a) {
    for (std::size_t b = 0; b < model.partitions[a].size(); ++b) {
      std::set<AtomName> atoms;
      int rep = model.partitions[a][b].front();
      for (const auto& p : model.states[rep].atoms)
        if (report.local_for[p].count(model.agents.names[a])) atoms.insert(p);
      view.local_valuations[a][static_cast<int>(b)] = std::move(atoms);
    }
  }
  return view;
}

std::string coalition_agent_name(std::vector<AgentId> members) {
  std::sort(members.begin(), members.end());
  std::string out = "D(";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += members[i];
  }
  return out + ")";
}

KripkeModel enrich_with_coalitions(
    const KripkeModel& model, const std::vector<std::vector<AgentId>>& coalitions) {
  KripkeModel out = model;
  for (const auto& coalition : coalitions) {
    if (coalition.empty())
      throw Error(Errc::EmptyAgentSet, "empty coalition");
    std::vector<int> idx;
    for (const auto& a : coalition) {
      int i = model.agents.index_of(a);
      if (i < 0) throw Error(Errc::UnknownAgent, "unknown agent " + a);
      idx.push_back(i);
    }
    // Common refinement: states are together iff together for every member.
    std::map<std::vector<int>, std::vector<int>> blocks;
    for (std::size_t s = 0; s < model.states.size(); ++s) {
      std::vector<int> key;
      for (int a : idx) key.push_back(model.block_of(a, static_cast<int>(s)));
      blocks[key].push_back(static_cast<int>(s));
    }
    std::vector<std::vector<int>> partition;
    for (auto& [key, members] : blocks) partition.push_back(std::move(members));
    out.agents.names.push_back(coalition_agent_name(coalition));
    out.partitions.push_back(std::move(partition));
  }
  out.finalize();
  return out;
}

namespace {

struct KripkeIso {
  const KripkeModel& m1;
  const KripkeModel& m2;
  std::vector<int> fwd;  // m1 state -> m2 state or -1
  std::vector<int> bwd;

  bool compatible(int s, int t) {
    if (m1.states[s].atoms != m2.states[t].atoms) return false;
    for (std::size_t a = 0; a < m1.agents.size(); ++a) {
      int ai = static_cast<int>(a);
      if (m1.block_members(ai, m1.block_of(ai, s)).size() !=
          m2.block_members(ai, m2.block_of(ai, t)).size())
        return false;
      // Already-mapped states must agree on relatedness.
      for (std::size_t u = 0; u < fwd.size(); ++u)
        if (fwd[u] >= 0 &&
            m1.related(ai, s, static_cast<int>(u)) != m2.related(ai, t, fwd[u]))
          return false;
    }
    return true;
  }

  bool extend(int k) {
    if (k == static_cast<int>(fwd.size())) return true;
    for (std::size_t t = 0; t < bwd.size(); ++t) {
      if (bwd[t] >= 0 || !compatible(k, static_cast<int>(t))) continue;
      fwd[k] = static_cast<int>(t);
      bwd[t] = k;
      if (extend(k + 1)) return true;
      fwd[k] = -1;
      bwd[t] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::map<StateId, StateId>> kripke_isomorphic(
    const KripkeModel& m1, const KripkeModel& m2) {
  if (!(m1.agents == m2.agents)) return std::nullopt;
  if (m1.states.size() != m2.states.size()) return std::nullopt;
  KripkeIso search{m1, m2,
                   std::vector<int>(m1.states.size(), -1),
                   std::vector<int>(m2.states.size(), -1)};
  if (!search.extend(0)) return std::nullopt;
  std::map<StateId, StateId> out;
  for (std::size_t s = 0; s < m1.states.size(); ++s)
    out[m1.states[s].id] = m2.states[search.fwd[s]].id;
  return out;
}

}  // namespace epiplex
