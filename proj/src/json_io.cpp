#include "epiplex/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace epiplex {

ModelKind detect_kind(const json& j) {
  if (!j.is_object()) throw Error(Errc::BadInput, "model file must be a JSON object");
  if (j.contains("states")) return ModelKind::Kripke;
  if (j.contains("vertices") && j["vertices"].is_array() && !j["vertices"].empty() &&
      j["vertices"].front().contains("pre"))
    return ModelKind::Action;
  if (j.contains("vertices")) return ModelKind::Simplicial;
  throw Error(Errc::BadInput, "unrecognized model JSON shape");
}

namespace {

std::vector<AgentId> agents_from(const json& j) {
  if (!j.contains("agents") || !j["agents"].is_array())
    throw Error(Errc::BadInput, "missing \"agents\" array");
  std::vector<AgentId> out;
  for (const auto& a : j["agents"]) out.push_back(a.get<std::string>());
  return out;
}

std::set<AtomName> atom_set(const json& j) {
  std::set<AtomName> out;
  for (const auto& p : j) out.insert(p.get<std::string>());
  return out;
}

}  // namespace

SimplicialModel simplicial_from_json(const json& j) {
  SimplicialModel m;
  m.agents.names = agents_from(j);
  if (!j.contains("vertices") || !j.contains("facets"))
    throw Error(Errc::BadInput, "simplicial model needs \"vertices\" and \"facets\"");
  for (const auto& vj : j["vertices"]) {
    Vertex v;
    v.id = vj.at("id").get<std::string>();
    v.agent = vj.at("agent").get<std::string>();
    if (vj.contains("atoms")) v.atoms = atom_set(vj["atoms"]);
    m.vertices.push_back(std::move(v));
  }
  for (const auto& fj : j["facets"]) {
    Simplex f;
    for (const auto& vid : fj) f.push_back(vid.get<std::string>());
    m.facets.push_back(make_simplex(f));
  }
  m.finalize();
  return m;
}

json to_json(const SimplicialModel& model) {
  json j;
  j["agents"] = model.agents.names;
  auto vertices = model.vertices;
  std::sort(vertices.begin(), vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  j["vertices"] = json::array();
  for (const auto& v : vertices)
    j["vertices"].push_back(
        {{"id", v.id}, {"agent", v.agent}, {"atoms", v.atoms}});
  auto facets = model.facets;
  std::sort(facets.begin(), facets.end());
  j["facets"] = facets;
  return j;
}

KripkeModel kripke_from_json(const json& j, std::ostream* warnings) {
  KripkeModel m;
  m.agents.names = agents_from(j);
  if (!j.contains("states") || !j.contains("relations"))
    throw Error(Errc::BadInput, "kripke model needs \"states\" and \"relations\"");
  std::map<StateId, int> index;
  for (const auto& sj : j["states"]) {
    KripkeState s;
    s.id = sj.at("id").get<std::string>();
    if (sj.contains("atoms")) s.atoms = atom_set(sj["atoms"]);
    if (index.count(s.id))
      throw Error(Errc::BadInput, "duplicate state id " + s.id);
    index[s.id] = static_cast<int>(m.states.size());
    m.states.push_back(std::move(s));
  }
  if (m.states.empty()) throw Error(Errc::BadInput, "model has no states");
  if (j.contains("atoms")) m.declared_atoms = atom_set(j["atoms"]);

  const int n = static_cast<int>(m.states.size());
  for (const auto& agent : m.agents.names) {
    if (!j["relations"].contains(agent))
      throw Error(Errc::BadInput, "missing relation for agent " + agent);
    std::vector<std::vector<int>> entries;
    for (const auto& entry : j["relations"][agent]) {
      std::vector<int> members;
      for (const auto& id : entry) {
        auto it = index.find(id.get<std::string>());
        if (it == index.end())
          throw Error(Errc::BadInput, "relation mentions unknown state " +
                                          id.get<std::string>());
        members.push_back(it->second);
      }
      entries.push_back(std::move(members));
    }
    // Blocks when disjoint, otherwise a pair list to close.
    std::set<int> seen;
    bool disjoint = true;
    for (const auto& entry : entries)
      for (int s : entry)
        if (!seen.insert(s).second) disjoint = false;
    if (disjoint) {
      for (int s = 0; s < n; ++s)
        if (!seen.count(s)) entries.push_back({s});  // singletons for the rest
      m.partitions.push_back(std::move(entries));
    } else {
      if (warnings)
        *warnings << "warning: relation for agent " << agent
                  << " is not a partition; closing pairs into equivalence classes\n";
      std::vector<std::pair<int, int>> pairs;
      for (const auto& entry : entries)
        for (std::size_t i = 0; i + 1 < entry.size(); ++i)
          pairs.emplace_back(entry[i], entry[i + 1]);
      m.partitions.push_back(close_into_partition(n, pairs));
    }
  }
  m.finalize();
  return m;
}

json to_json(const KripkeModel& model) {
  json j;
  j["agents"] = model.agents.names;
  j["states"] = json::array();
  auto states = model.states;
  std::sort(states.begin(), states.end(),
            [](const KripkeState& a, const KripkeState& b) { return a.id < b.id; });
  for (const auto& s : states)
    j["states"].push_back({{"id", s.id}, {"atoms", s.atoms}});
  j["atoms"] = model.declared_atoms;
  j["relations"] = json::object();
  for (std::size_t a = 0; a < model.agents.size(); ++a) {
    json blocks = json::array();
    std::vector<std::vector<StateId>> rendered;
    for (const auto& block : model.partitions[a]) {
      std::vector<StateId> ids;
      for (int s : block) ids.push_back(model.states[s].id);
      std::sort(ids.begin(), ids.end());
      rendered.push_back(std::move(ids));
    }
    std::sort(rendered.begin(), rendered.end());
    for (auto& ids : rendered) blocks.push_back(ids);
    j["relations"][model.agents.names[a]] = blocks;
  }
  return j;
}

ActionModel action_from_json(const json& j) {
  ActionModel m;
  m.agents.names = agents_from(j);
  if (!j.contains("vertices") || !j.contains("facets"))
    throw Error(Errc::BadInput, "action model needs \"vertices\" and \"facets\"");
  for (const auto& vj : j["vertices"]) {
    ActionVertex v;
    v.id = vj.at("id").get<std::string>();
    v.agent = vj.at("agent").get<std::string>();
    v.pre = vj.contains("pre") ? parse_formula(vj["pre"].get<std::string>()) : fml::tru();
    if (vj.contains("post"))
      for (const auto& [atom, formula] : vj["post"].items())
        v.post[atom] = parse_formula(formula.get<std::string>());
    m.vertices.push_back(std::move(v));
  }
  for (const auto& fj : j["facets"]) {
    Simplex f;
    for (const auto& vid : fj) f.push_back(vid.get<std::string>());
    m.facets.push_back(make_simplex(f));
  }
  // Facet-precondition style: convert through the disjunction rule.
  if (j.contains("facet_pre")) {
    std::vector<FormulaPtr> pres;
    for (const auto& p : j["facet_pre"]) pres.push_back(parse_formula(p.get<std::string>()));
    m = vertex_pre_from_facet_pre(m, pres);
  }
  return m;
}

json to_json(const ActionModel& model) {
  json j;
  j["agents"] = model.agents.names;
  j["vertices"] = json::array();
  auto vertices = model.vertices;
  std::sort(vertices.begin(), vertices.end(),
            [](const ActionVertex& a, const ActionVertex& b) { return a.id < b.id; });
  for (const auto& v : vertices) {
    json vj = {{"id", v.id}, {"agent", v.agent}, {"pre", to_string(v.pre)}};
    if (!v.post.empty()) {
      json post = json::object();
      for (const auto& [atom, formula] : v.post) post[atom] = to_string(formula);
      vj["post"] = post;
    }
    j["vertices"].push_back(vj);
  }
  auto facets = model.facets;
  std::sort(facets.begin(), facets.end());
  j["facets"] = facets;
  return j;
}

BeliefAssignment belief_from_json(const json& j) {
  BeliefAssignment bf;
  for (const auto& [agent, mapping] : j.items())
    for (const auto& [from, to] : mapping.items())
      bf.functions[agent][from] = to.get<std::string>();
  return bf;
}

json to_json(const BeliefAssignment& bf) {
  json j = json::object();
  for (const auto& [agent, mapping] : bf.functions) {
    json fa = json::object();
    for (const auto& [from, to] : mapping) fa[from] = to;
    j[agent] = fa;
  }
  return j;
}

FacetRelation relation_from_json(const json& j, const SimplicialModel& c1,
                                 const SimplicialModel& c2) {
  if (!j.contains("pairs")) throw Error(Errc::BadInput, "relation needs \"pairs\"");
  FacetRelation out;
  for (const auto& pair : j["pairs"]) {
    if (!pair.is_array() || pair.size() != 2)
      throw Error(Errc::BadInput, "relation pairs must be two facet references");
    out.pairs.emplace_back(parse_facet_ref(c1, pair[0].get<std::string>()),
                           parse_facet_ref(c2, pair[1].get<std::string>()));
  }
  return out;
}

VertexMap vertex_map_from_json(const json& j) {
  if (!j.contains("map")) throw Error(Errc::BadInput, "vertex map needs \"map\"");
  VertexMap out;
  for (const auto& [from, to] : j["map"].items()) out.map[from] = to.get<std::string>();
  return out;
}

json load_json_file(const std::string& path, std::istream& stdin_stream) {
  try {
    if (path == "-") return json::parse(stdin_stream);
    std::ifstream in(path);
    if (!in) throw Error(Errc::BadInput, "cannot open " + path);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::BadInput, "invalid JSON in " + path + ": " + e.what());
  }
}

int parse_facet_ref(const SimplicialModel& model, const std::string& ref) {
  auto point = parse_point(model, ref);
  int idx = model.facet_index(point);
  if (idx < 0)
    throw Error(Errc::FaceNotInComplex, ref + " does not name a facet");
  return idx;
}

Simplex parse_point(const SimplicialModel& model, const std::string& ref) {
  if (ref.empty()) throw Error(Errc::BadInput, "empty point reference");

  // Vertex ids win over facet indices when both could apply.
  if (model.has_vertex(ref)) return {ref};
  if (ref.find(',') != std::string::npos) {
    // Product vertex ids contain commas; split only at parenthesis depth 0.
    Simplex out;
    std::string part;
    int depth = 0;
    for (char c : ref) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        if (!part.empty()) out.push_back(part);
        part.clear();
      } else {
        part += c;
      }
    }
    if (!part.empty()) out.push_back(part);
    out = make_simplex(out);
    for (const auto& vid : out)
      if (!model.has_vertex(vid))
        throw Error(Errc::BadInput, "unknown vertex " + vid + " in point " + ref);
    return out;
  }

  std::string digits = ref;
  if (!digits.empty() && (digits[0] == 'F' || digits[0] == 'f')) digits = digits.substr(1);
  if (!digits.empty() &&
      std::all_of(digits.begin(), digits.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    int idx = std::stoi(digits);
    if (idx < 0 || idx >= static_cast<int>(model.facets.size()))
      throw Error(Errc::FaceNotInComplex, "facet index " + ref + " out of range");
    return model.facets[idx];
  }
  throw Error(Errc::BadInput, "cannot resolve point " + ref);
}

}  // namespace epiplex
