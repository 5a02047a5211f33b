#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epiplex/complex.hpp"

namespace epiplex {

using StateId = std::string;

struct KripkeState {
  StateId id;
  std::set<AtomName> atoms;
};

// Finite multi-agent S5 model. Accessibility relations are stored as
// partitions of the state set, one per agent.
struct KripkeModel {
  AgentSet agents;
  std::vector<KripkeState> states;
  // partitions[agentIdx] is a list of blocks, each a sorted list of state
  // indices. Blocks are disjoint and cover all states.
  std::vector<std::vector<std::vector<int>>> partitions;
  std::set<AtomName> declared_atoms;  // defaults to the union of state atoms

  void finalize();

  int state_index(const StateId& s) const;  // -1 when absent
  const KripkeState& state(const StateId& s) const;
  int block_of(int agent, int state) const;
  const std::vector<int>& block_members(int agent, int block) const;
  bool related(int agent, int s, int t) const {
    return block_of(agent, s) == block_of(agent, t);
  }

 private:
  std::map<StateId, int> state_idx_;
  std::vector<std::vector<int>> state_block_;  // [agentIdx][state] -> block
};

// Normalizes arbitrary related-pairs into partition blocks.
std::vector<std::vector<int>> close_into_partition(
    int state_count, const std::vector<std::pair<int, int>>& pairs);

struct LocalityReport {
  std::map<AtomName, std::set<AgentId>> local_for;
  bool is_local = false;
  bool is_proper = false;
  bool is_factual = false;
};

LocalityReport analyze(const KripkeModel& model);

struct DistributedView {
  // One tuple of per-agent block indices per state, in state order.
  std::vector<std::vector<int>> tuples;
  // Per agent: block index -> atoms of that local state (the agent's local
  // variables true throughout the block).
  std::vector<std::map<int, std::set<AtomName>>> local_valuations;
};

DistributedView to_distributed(const KripkeModel& model);

// Adds one fresh agent per coalition whose partition is the common refinement
// of the members' partitions. New agents are named "D(a,b)".
KripkeModel enrich_with_coalitions(const KripkeModel& model,
                                   const std::vector<std::vector<AgentId>>& coalitions);

std::string coalition_agent_name(std::vector<AgentId> members);

// State bijection preserving valuations and all accessibility partitions.
std::optional<std::map<StateId, StateId>> kripke_isomorphic(
    const KripkeModel& m1, const KripkeModel& m2);

}  // namespace epiplex
