#include "epiplex/scenarios.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace epiplex {

namespace {

std::vector<AgentId> letter_agents(int n) {
  if (n < 2 || n > 26) throw Error(Errc::BadInput, "agent count must be in [2, 26]");
  std::vector<AgentId> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

SimplicialModel build_simplicial(std::vector<AgentId> agents,
                                 std::vector<Vertex> vertices,
                                 std::vector<Simplex> facets) {
  SimplicialModel m;
  m.agents.names = std::move(agents);
  m.vertices = std::move(vertices);
  m.facets = std::move(facets);
  m.finalize();
  return m;
}

KripkeModel build_kripke(std::vector<AgentId> agents, std::vector<KripkeState> states,
                         std::vector<std::vector<std::vector<StateId>>> partitions,
                         std::set<AtomName> declared = {}) {
  KripkeModel m;
  m.agents.names = std::move(agents);
  m.states = std::move(states);
  m.declared_atoms = std::move(declared);
  std::map<StateId, int> index;
  for (std::size_t i = 0; i < m.states.size(); ++i)
    index[m.states[i].id] = static_cast<int>(i);
  for (const auto& agent_blocks : partitions) {
    std::vector<std::vector<int>> blocks;
    for (const auto& block : agent_blocks) {
      std::vector<int> members;
      for (const auto& id : block) members.push_back(index.at(id));
      blocks.push_back(std::move(members));
    }
    m.partitions.push_back(std::move(blocks));
  }
  m.finalize();
  return m;
}

}  // namespace

SimplicialModel muddy_children(int n) {
  auto agents = letter_agents(n);
  SimplicialModel m;
  m.agents.names = agents;

  auto vertex_id = [&](int child, int pattern) {
    std::string id = agents[child];
    for (int j = 0; j < n; ++j) {
      if (j == child) continue;
      id += (pattern & (1 << j)) ? '1' : '0';
    }
    return id;
  };

  std::set<VertexId> made;
  for (int pattern = 0; pattern < (1 << n); ++pattern) {
    Simplex facet;
    for (int child = 0; child < n; ++child) {
      VertexId id = vertex_id(child, pattern);
      facet.push_back(id);
      if (made.insert(id).second) {
        Vertex v;
        v.id = id;
        v.agent = agents[child];
        for (int j = 0; j < n; ++j)
          if (j != child && (pattern & (1 << j)))
            v.atoms.insert("m" + agents[j] + "_" + agents[child]);
        m.vertices.push_back(std::move(v));
      }
    }
    m.facets.push_back(make_simplex(facet));
  }
  m.finalize();
  return m;
}

SimplicialModel binary_inputs(int n) {
  auto agents = letter_agents(n);
  SimplicialModel m;
  m.agents.names = agents;
  for (int i = 0; i < n; ++i)
    for (int bit = 0; bit < 2; ++bit) {
      Vertex v;
      v.id = agents[i] + std::to_string(bit);
      v.agent = agents[i];
      if (bit) v.atoms.insert("1_" + agents[i]);
      m.vertices.push_back(std::move(v));
    }
  for (int pattern = 0; pattern < (1 << n); ++pattern) {
    Simplex facet;
    for (int i = 0; i < n; ++i)
      facet.push_back(agents[i] + ((pattern & (1 << i)) ? "1" : "0"));
    m.facets.push_back(make_simplex(facet));
  }
  m.finalize();
  return m;
}

KripkeModel binary_inputs_kripke(int n) {
  auto agents = letter_agents(n);
  KripkeModel m;
  m.agents.names = agents;
  for (int pattern = 0; pattern < (1 << n); ++pattern) {
    KripkeState s;
    s.id = "s";
    for (int i = 0; i < n; ++i) s.id += (pattern & (1 << i)) ? '1' : '0';
    for (int i = 0; i < n; ++i)
      if (pattern & (1 << i)) s.atoms.insert("1_" + agents[i]);
    m.states.push_back(std::move(s));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> blocks(2);
    for (int pattern = 0; pattern < (1 << n); ++pattern)
      blocks[(pattern >> i) & 1].push_back(pattern);
    m.partitions.push_back(std::move(blocks));
  }
  m.finalize();
  return m;
}

SimplicialModel single_facet(int n) {
  auto agents = letter_agents(n);
  SimplicialModel m;
  m.agents.names = agents;
  Simplex facet;
  for (const auto& a : agents) {
    m.vertices.push_back({a + "0", a, {}});
    facet.push_back(a + "0");
  }
  m.facets.push_back(make_simplex(facet));
  m.finalize();
  return m;
}

namespace {

// All ordered partitions (S_1, ..., S_k) of {0, ..., n-1}.
void ordered_partitions(std::vector<int> rest,
                        std::vector<std::vector<int>>& current,
                        const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
  if (rest.empty()) {
    emit(current);
    return;
  }
  const int n = static_cast<int>(rest.size());
  // Nonempty subsets of `rest` as the next block; keep rest[0] handling
  // symmetric by enumerating all masks.
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> block, remaining;
    for (int i = 0; i < n; ++i)
      ((mask >> i) & 1 ? block : remaining).push_back(rest[i]);
    current.push_back(block);
    ordered_partitions(remaining, current, emit);
    current.pop_back();
  }
}

}  // namespace

SimplicialModel chromatic_subdivision(const SimplicialModel& model) {
  SimplicialModel out;
  out.agents = model.agents;
  const int n = static_cast<int>(model.agents.size());

  std::vector<int> all_agents;
  for (int i = 0; i < n; ++i) all_agents.push_back(i);

  std::map<VertexId, Vertex> made;
  auto view_vertex = [&](int agent, const Simplex& seen) {
    VertexId id = model.agents.names[agent] + ":";
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (i) id += "+";
      id += seen[i];
    }
    if (!made.count(id)) {
      Vertex v;
      v.id = id;
      v.agent = model.agents.names[agent];
      for (const auto& u : seen)
        v.atoms.insert("saw_" + u + "_" + model.agents.names[agent]);
      made.emplace(id, std::move(v));
    }
    return id;
  };

  for (const auto& facet : model.facets) {
    std::map<int, VertexId> by_colour;
    for (const auto& vid : facet)
      by_colour[model.agents.index_of(model.vertex(vid).agent)] = vid;

    std::vector<std::vector<int>> current;
    ordered_partitions(all_agents, current, [&](const std::vector<std::vector<int>>& blocks) {
      Simplex new_facet;
      Simplex seen;  // vertices of blocks up to and including the current one
      for (const auto& block : blocks) {
        for (int agent : block) seen.push_back(by_colour.at(agent));
        seen = make_simplex(seen);
        for (int agent : block) new_facet.push_back(view_vertex(agent, seen));
      }
      out.facets.push_back(make_simplex(new_facet));
    });
  }

  for (auto& [id, v] : made) out.vertices.push_back(std::move(v));
  std::sort(out.facets.begin(), out.facets.end());
  out.facets.erase(std::unique(out.facets.begin(), out.facets.end()), out.facets.end());
  out.finalize();
  return out;
}

namespace {

ExampleModel build_example_model(const std::string& name) {
  if (name == "ex2.3")
    return build_kripke({"g", "w", "b"},
                        {{"s1", {}}, {"s2", {}}, {"s3", {}}},
                        {{{"s1", "s2"}, {"s3"}},
                         {{"s1", "s2"}, {"s3"}},
                         {{"s1"}, {"s2", "s3"}}});

  if (name == "ex2.2-kripke") return binary_inputs_kripke(3);
  if (name == "ex2.2-octahedron") return binary_inputs(3);
  if (name == "ex2.1-muddy") return muddy_children(3);

  if (name == "ex5.1")
    return build_simplicial(
        {"a", "b", "c"},
        {{"a0", "a", {}}, {"a1", "a", {"p_a"}}, {"b0", "b", {}},
         {"b1", "b", {"p_b"}}, {"c1", "c", {"p_c"}}},
        {{"a0", "c1", "b1"}, {"a1", "c1", "b1"}, {"a1", "c1", "b0"}});

  if (name == "ex7.3-Cprime")
    return build_simplicial(
        {"a", "b", "c"},
        {{"a0", "a", {}}, {"a1", "a", {"p_a"}}, {"b0", "b", {}},
         {"b1", "b", {"p_b"}}, {"c1", "c", {"p_c"}},
         {"a2", "a", {"p_a"}}, {"a3", "a", {}}, {"b2", "b", {"p_b"}},
         {"c0", "c", {}}},
        {{"a0", "c1", "b1"},   // X
         {"a1", "c1", "b1"},   // Y
         {"a1", "c1", "b0"},   // Z
         {"a2", "c0", "b0"},   // V
         {"a2", "c0", "b2"},   // U
         {"a3", "c0", "b2"}}); // W

  if (name == "ex4.2-C" || name == "ex4.1-left-big") {
    bool uniform = name != "ex4.2-C";
    auto atoms = [&](const char* p) {
      return uniform ? std::set<AtomName>{} : std::set<AtomName>{p};
    };
    return build_simplicial(
        {"a", "b", "c"},
        {{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}},
         {"a1", "a", atoms("p_a")}, {"b1", "b", atoms("p_b")},
         {"c1", "c", atoms("p_c")}},
        {{"a0", "b1", "c1"},   // F1
         {"a1", "b1", "c0"},   // F2
         {"a1", "b0", "c1"},   // F3
         {"a1", "b1", "c1"}}); // F4
  }

  if (name == "ex4.2-Cprime")
    return build_simplicial(
        {"a", "b", "c"},
        {{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}},
         {"a1", "a", {"p_a"}}, {"b1", "b", {"p_b"}}, {"c1", "c", {"p_c"}}},
        {{"a0", "b1", "c1"}, {"a1", "b1", "c0"}, {"a1", "b0", "c1"}});

  if (name == "ex4.1-left-small")
    return build_simplicial({"a", "b", "c"},
                            {{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}}},
                            {{"a0", "b0", "c0"}});

  if (name == "ex4.1-right-big")
    return build_simplicial(
        {"a", "b", "c"},
        {{"a0", "a", {}}, {"a1", "a", {"p_a"}}, {"b1", "b", {}},
         {"b2", "b", {}}, {"b3", "b", {}}, {"c0", "c", {}}},
        {{"a0", "b1", "c0"}, {"a1", "b3", "c0"}, {"a0", "b2", "c0"}});

  if (name == "ex4.1-right-small")
    return build_simplicial(
        {"a", "b", "c"},
        {{"a0", "a", {}}, {"a1", "a", {"p_a"}}, {"b0", "b", {}},
         {"b1", "b", {}}, {"c0", "c", {}}},
        {{"a0", "b1", "c0"}, {"a1", "b0", "c0"}});

  if (name == "ex4.3-cycle4")
    return build_simplicial(
        {"a", "b"},
        {{"a0", "a", {}}, {"a1", "a", {}}, {"b0", "b", {}}, {"b1", "b", {}}},
        {{"a0", "b0"}, {"b0", "a1"}, {"a1", "b1"}, {"b1", "a0"}});

  if (name == "ex4.3-cycle6")
    return build_simplicial(
        {"a", "b"},
        {{"a0", "a", {}}, {"a1", "a", {}}, {"a2", "a", {}},
         {"b0", "b", {}}, {"b1", "b", {}}, {"b2", "b", {}}},
        {{"a0", "b0"}, {"b0", "a1"}, {"a1", "b1"}, {"b1", "a2"},
         {"a2", "b2"}, {"b2", "a0"}});

  if (name == "ex4.3-edge")
    return build_simplicial({"a", "b"}, {{"a0", "a", {}}, {"b0", "b", {}}},
                            {{"a0", "b0"}});

  if (name == "sec4-path")
    return build_simplicial(
        {"a", "b"},
        {{"b0", "b", {}}, {"a1", "a", {"one_a"}}, {"b1", "b", {"one_b"}},
         {"a2", "a", {"two_a"}}},
        {{"b0", "a1"}, {"a1", "b1"}, {"b1", "a2"}});

  if (name == "sec4-path-sub")
    return build_simplicial(
        {"a", "b"},
        {{"b0", "b", {}}, {"a1", "a", {"one_a"}}, {"b1x", "b", {"one_b"}},
         {"a1x", "a", {"one_a"}}, {"b1", "b", {"one_b"}}, {"a2", "a", {"two_a"}}},
        {{"b0", "a1"}, {"a1", "b1x"}, {"b1x", "a1x"}, {"a1x", "b1"}, {"b1", "a2"}});

  if (name == "sec4-edge")
    return build_simplicial({"a", "b"},
                            {{"a1", "a", {"one_a"}}, {"b1", "b", {"one_b"}}},
                            {{"a1", "b1"}});

  if (name == "sec4-edge-sub")
    return build_simplicial(
        {"a", "b"},
        {{"a1", "a", {"one_a"}}, {"b1x", "b", {"one_b"}},
         {"a1x", "a", {"one_a"}}, {"b1", "b", {"one_b"}}},
        {{"a1", "b1x"}, {"b1x", "a1x"}, {"a1x", "b1"}});

  if (name == "sec6-improper2")
    return build_kripke({"a"}, {{"s", {}}, {"t", {"p"}}}, {{{"s", "t"}}}, {"p"});

  if (name == "sec6-chain3")
    return build_kripke({"a", "b"}, {{"s", {"p"}}, {"t", {}}, {"u", {"p"}}},
                        {{{"s", "t"}, {"u"}}, {{"s"}, {"t", "u"}}}, {"p"});

  if (name == "sec6-chain3-local")
    return build_kripke({"a", "b"},
                        {{"s", {"q_a", "q_b"}}, {"t", {"q_a"}}, {"u", {}}},
                        {{{"s", "t"}, {"u"}}, {{"s"}, {"t", "u"}}}, {"q_a", "q_b"});

  if (name == "ex6.1-square" || name == "ex7.2-square")
    return build_kripke({"a", "b"},
                        {{"s", {"p"}}, {"t", {}}, {"u", {}}, {"v", {"p"}}},
                        {{{"s", "t"}, {"u", "v"}}, {{"s", "u"}, {"t", "v"}}}, {"p"});

  if (name == "ex7.2-2state")
    return build_kripke({"a", "b"}, {{"s0", {}}, {"s1", {"p"}}},
                        {{{"s0", "s1"}}, {{"s0", "s1"}}}, {"p"});

  if (name == "ex7.2-x3")
    return build_kripke({"a", "b", "D(a,b)"}, {{"s0", {}}, {"s1", {"p"}}},
                        {{{"s0", "s1"}}, {{"s0", "s1"}}, {{"s0"}, {"s1"}}}, {"p"});

  if (name == "ex9.2-model")
    return build_simplicial(
        {"a", "b", "c"},
        {{"a1", "a", {"p_a"}}, {"b1", "b", {"p_b"}}, {"c0", "c", {}},
         {"c1", "c", {"p_c"}}},
        {{"a1", "b1", "c0"}, {"a1", "b1", "c1"}});

  if (name == "ex9.1-action") {
    ActionModel action;
    action.agents.names = {"a", "b", "c"};
    auto pre_a = parse_formula("~(K[a] p_c | K[a] ~p_c)");
    auto pre_b = parse_formula("~(K[b] p_c | K[b] ~p_c)");
    action.vertices = {{"a'", "a", pre_a, {}},
                       {"b'", "b", pre_b, {}},
                       {"c0'", "c", parse_formula("~p_c"), {}},
                       {"c1'", "c", parse_formula("p_c"), {}}};
    action.facets = {make_simplex({"a'", "b'", "c0'"}),
                     make_simplex({"a'", "b'", "c1'"})};
    return action;
  }

  throw Error(Errc::UnknownScenario, "unknown scenario: " + name);
}

}  // namespace

ExampleModel example_model(const std::string& name) { return build_example_model(name); }

SimplicialModel random_simplicial(int agents, int max_facets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto names = letter_agents(agents);
  SimplicialModel m;
  m.agents.names = names;

  std::vector<std::vector<VertexId>> per_agent(agents);
  for (int a = 0; a < agents; ++a) {
    int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      Vertex v;
      v.id = names[a] + std::to_string(i);
      v.agent = names[a];
      if (rng() % 2) v.atoms.insert("p_" + names[a]);
      per_agent[a].push_back(v.id);
      m.vertices.push_back(std::move(v));
    }
  }

  std::set<Simplex> facets;
  int target = 1 + static_cast<int>(rng() % std::max(1, max_facets));
  for (int i = 0; i < target; ++i) {
    Simplex f;
    for (int a = 0; a < agents; ++a)
      f.push_back(per_agent[a][rng() % per_agent[a].size()]);
    facets.insert(make_simplex(f));
  }
  m.facets.assign(facets.begin(), facets.end());

  std::set<VertexId> used;
  for (const auto& f : m.facets) used.insert(f.begin(), f.end());
  m.vertices.erase(std::remove_if(m.vertices.begin(), m.vertices.end(),
                                  [&](const Vertex& v) { return !used.count(v.id); }),
                   m.vertices.end());
  m.finalize();
  return m;
}

KripkeModel random_local_proper(int agents, int max_states, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto names = letter_agents(agents);
  const int n = 2 + static_cast<int>(rng() % std::max(1, max_states - 1));

  KripkeModel m;
  m.agents.names = names;
  for (int s = 0; s < n; ++s) m.states.push_back({"s" + std::to_string(s), {}});

  auto sample_partitions = [&]() {
    std::vector<std::vector<std::vector<int>>> out;
    for (int a = 0; a < agents; ++a) {
      int block_count = 1 + static_cast<int>(rng() % n);
      std::map<int, std::vector<int>> blocks;
      for (int s = 0; s < n; ++s) blocks[static_cast<int>(rng() % block_count)].push_back(s);
      std::vector<std::vector<int>> partition;
      for (auto& [key, members] : blocks) partition.push_back(std::move(members));
      out.push_back(std::move(partition));
    }
    return out;
  };
  auto proper = [&](const std::vector<std::vector<std::vector<int>>>& partitions) {
    std::vector<int> block(n);
    std::map<std::vector<int>, int> seen;
    std::vector<std::vector<int>> state_block(agents, std::vector<int>(n));
    for (int a = 0; a < agents; ++a)
      for (std::size_t b = 0; b < partitions[a].size(); ++b)
        for (int s : partitions[a][b]) state_block[a][s] = static_cast<int>(b);
    for (int s = 0; s < n; ++s) {
      std::vector<int> key;
      for (int a = 0; a < agents; ++a) key.push_back(state_block[a][s]);
      if (!seen.emplace(std::move(key), s).second) return false;
    }
    return true;
  };

  auto partitions = sample_partitions();
  for (int attempt = 0; attempt < 200 && !proper(partitions); ++attempt)
    partitions = sample_partitions();
  if (!proper(partitions)) {
    // Give the last agent perfect information; the model stays local.
    std::vector<std::vector<int>> discrete;
    for (int s = 0; s < n; ++s) discrete.push_back({s});
    partitions.back() = std::move(discrete);
  }
  m.partitions = partitions;
  m.finalize();

  // Atoms constant per class are local by construction.
  for (int a = 0; a < agents; ++a) {
    int atom_count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < atom_count; ++i) {
      AtomName p = "p" + std::to_string(i) + "_" + names[a];
      m.declared_atoms.insert(p);
      for (const auto& block : m.partitions[a])
        if (rng() % 2)
          for (int s : block) m.states[s].atoms.insert(p);
    }
  }
  m.finalize();
  return m;
}

std::vector<std::string> example_model_names() {
  return {"ex2.1-muddy",   "ex2.2-kripke",    "ex2.2-octahedron",
          "ex2.3",         "ex4.1-left-big",  "ex4.1-left-small",
          "ex4.1-right-big", "ex4.1-right-small", "ex4.2-C",
          "ex4.2-Cprime",  "ex4.3-cycle4",    "ex4.3-cycle6",
          "ex4.3-edge",    "ex5.1",           "ex6.1-square",
          "ex7.2-2state",  "ex7.2-square",    "ex7.2-x3",
          "ex7.3-Cprime",  "ex9.1-action",    "ex9.2-model",
          "sec4-edge",     "sec4-edge-sub",   "sec4-path",
          "sec4-path-sub", "sec6-chain3",     "sec6-chain3-local",
          "sec6-improper2"};
}

}  // namespace epiplex
