#include <doctest.h>

#include "epiplex/complex.hpp"
#include "helpers.hpp"

using namespace epiplex;
using testing::get_simplicial;
using testing::model3;

TEST_CASE("validate accepts the three-facet model") {
  auto m = get_simplicial("ex5.1");
  CHECK(validate(m).ok());
}

TEST_CASE("validate accepts a single facet") {
  auto m = model3({{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}}},
                  {{"a0", "b0", "c0"}});
  CHECK(validate(m).ok());
}

TEST_CASE("validate flags a chromaticity violation") {
  auto m = model3({{"a0", "a", {}}, {"a1", "a", {}}, {"b0", "b", {}}},
                  {{"a0", "a1", "b0"}});
  auto report = validate(m);
  CHECK(!report.ok());
  bool chromatic = false, coverage = false;
  for (const auto& p : report.problems) {
    if (p.kind == "chromaticity") chromatic = true;
    if (p.kind == "colour-coverage") coverage = true;
  }
  CHECK(chromatic);
  CHECK(coverage);  // two a-vertices leave no room for c
}

TEST_CASE("validate rejects empty models and dangling vertices") {
  SimplicialModel empty;
  empty.agents.names = {"a", "b"};
  empty.finalize();
  CHECK(!validate(empty).ok());

  auto dangling = model3({{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}},
                          {"a1", "a", {}}},
                         {{"a0", "b0", "c0"}});
  auto report = validate(dangling);
  REQUIRE(!report.ok());
  CHECK(report.problems.front().kind == "dangling");
}

TEST_CASE("validate flags impure facet lists") {
  auto m = model3({{"a0", "a", {}}, {"a1", "a", {}}, {"b0", "b", {}},
                   {"b1", "b", {}}, {"c0", "c", {}}},
                  {{"a0", "b0", "c0"}, {"a1", "b1"}});
  auto report = validate(m);
  bool purity = false;
  for (const auto& p : report.problems) purity = purity || p.kind == "purity";
  CHECK(purity);
}

TEST_CASE("faces enumerates nonempty subsets") {
  CHECK(faces({"a0", "b0"}).size() == 3);
  CHECK(faces({"a0"}).size() == 1);
  auto f = faces({"a0", "b0", "c0"});
  CHECK(f.size() == 7);  // 2^3 - 1
  std::set<Simplex> unique(f.begin(), f.end());
  CHECK(unique.size() == 7);
}

TEST_CASE("star of an edge in the three-facet model") {
  auto m = get_simplicial("ex5.1");
  auto facets = star(m, make_simplex({"b1", "c1"}));
  REQUIRE(facets.size() == 2);  // X and Y share the edge
  CHECK(std::find(facets.begin(), facets.end(), make_simplex({"a0", "b1", "c1"})) !=
        facets.end());
  CHECK(std::find(facets.begin(), facets.end(), make_simplex({"a1", "b1", "c1"})) !=
        facets.end());
}

TEST_CASE("star of a facet is the facet itself") {
  auto m = get_simplicial("ex5.1");
  CHECK(star(m, make_simplex({"a0", "b1", "c1"})).size() == 1);
}

TEST_CASE("star of an octahedron vertex has four facets") {
  auto m = binary_inputs(3);
  for (const auto& v : m.vertices) CHECK(star(m, {v.id}).size() == 4);
}

TEST_CASE("star rejects non-faces") {
  auto m = get_simplicial("ex5.1");
  CHECK_THROWS_AS(star(m, make_simplex({"a0", "b0"})), Error);  // not cohabiting
}

TEST_CASE("skeleton counts") {
  auto tri = model3({{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}}},
                    {{"a0", "b0", "c0"}});
  CHECK(skeleton(tri, 1).size() == 6);  // 3 vertices + 3 edges
  CHECK(skeleton(tri, 2).size() == 7);  // the full complex

  auto c = get_simplicial("ex4.2-C");
  std::size_t vertices = 0, edges = 0;
  for (const auto& s : skeleton(c, 1)) (s.size() == 1 ? vertices : edges)++;
  CHECK(vertices == 6);
  CHECK(edges == 9);

  CHECK_THROWS_AS(skeleton(tri, 5), Error);
  CHECK_THROWS_AS(skeleton(tri, -1), Error);
}

TEST_CASE("manifold checks") {
  CHECK(is_manifold(get_simplicial("ex5.1")).is_manifold);
  auto report = is_manifold(get_simplicial("ex7.3-Cprime"));
  CHECK(!report.is_manifold);
  CHECK(report.witness.find("path") != std::string::npos);
  CHECK(is_manifold(binary_inputs(3)).is_manifold);
}

TEST_CASE("boundary") {
  auto tri = model3({{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}}},
                    {{"a0", "b0", "c0"}});
  CHECK(boundary(tri).size() == 3);
  CHECK(boundary(binary_inputs(3)).empty());

  auto m = get_simplicial("ex5.1");
  auto b = boundary(m);
  CHECK(b.size() == 5);  // all edges except {b1,c1} and {a1,c1}
  CHECK(std::find(b.begin(), b.end(), make_simplex({"b1", "c1"})) == b.end());
  CHECK(std::find(b.begin(), b.end(), make_simplex({"a1", "c1"})) == b.end());
}

TEST_CASE("restrict_to_agents projects facets") {
  auto m = get_simplicial("ex5.1");
  auto r = restrict_to_agents(m, {"b", "c"});
  CHECK(r.agents.names == std::vector<AgentId>{"b", "c"});
  CHECK(r.vertices.size() == 3);  // b0, b1, c1
  CHECK(r.facets.size() == 2);    // the path b1-c1-b0
  CHECK(validate(r).ok());

  auto full = restrict_to_agents(m, {"a", "b", "c"});
  CHECK(is_isomorphic(full, m).has_value());

  auto single = restrict_to_agents(
      model3({{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}}}, {{"a0", "b0", "c0"}}),
      {"a"});
  CHECK(single.facets.size() == 1);
  CHECK(single.facets.front() == make_simplex({"a0"}));

  CHECK_THROWS_AS(restrict_to_agents(m, {}), Error);
}

TEST_CASE("vertex map predicates on the 4-cycle collapse") {
  auto cyc = get_simplicial("ex4.3-cycle4");
  auto edge = get_simplicial("ex4.3-edge");
  VertexMap fold;
  fold.map = {{"a0", "a0"}, {"a1", "a0"}, {"b0", "b0"}, {"b1", "b0"}};
  CHECK(is_simplicial(fold, cyc, edge));
  CHECK(is_chromatic(fold, cyc, edge));
  CHECK(is_value_preserving(fold, cyc, edge));
  CHECK(is_rigid(fold, cyc, edge));

  VertexMap identity;
  for (const auto& v : cyc.vertices) identity.map[v.id] = v.id;
  CHECK(is_simplicial(identity, cyc, cyc));
  CHECK(is_chromatic(identity, cyc, cyc));
  CHECK(is_value_preserving(identity, cyc, cyc));

  // Collapsing an edge across colours is not chromatic.
  VertexMap collapse;
  collapse.map = {{"a0", "b0"}, {"a1", "a0"}, {"b0", "b0"}, {"b1", "b0"}};
  CHECK(!is_chromatic(collapse, cyc, cyc));
}

TEST_CASE("chromatic maps over random models are rigid") {
  // Colour preservation forces dimension preservation.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto src = random_simplicial(2 + static_cast<int>(rng() % 3), 6, rng());
    auto dst = random_simplicial(static_cast<int>(src.agents.size()), 6, rng());
    VertexMap f;
    bool total = true;
    for (const auto& v : src.vertices) {
      std::vector<VertexId> targets;
      for (const auto& w : dst.vertices)
        if (w.agent == v.agent) targets.push_back(w.id);
      if (targets.empty()) {
        total = false;
        break;
      }
      f.map[v.id] = targets[rng() % targets.size()];
    }
    if (!total) continue;
    if (is_chromatic(f, src, dst)) CHECK(is_rigid(f, src, dst));
  }
}

TEST_CASE("isomorphism search") {
  auto m = get_simplicial("ex5.1");
  CHECK(is_isomorphic(m, m).has_value());

  auto tri = model3({{"a0", "a", {}}, {"b0", "b", {}}, {"c0", "c", {}}},
                    {{"a0", "b0", "c0"}});
  CHECK(!is_isomorphic(tri, binary_inputs(3)).has_value());

  auto renamed = m;
  for (auto& v : renamed.vertices) v.id = "x" + v.id;
  for (auto& f : renamed.facets) {
    for (auto& vid : f) vid = "x" + vid;
    f = make_simplex(f);
  }
  renamed.finalize();
  auto iso = is_isomorphic(m, renamed);
  REQUIRE(iso.has_value());
  CHECK(is_value_preserving(*iso, m, renamed));
  CHECK(is_chromatic(*iso, m, renamed));
}

TEST_CASE("facet invariants on generated models") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    REQUIRE(validate(m).ok());
    for (const auto& f : m.facets) {
      CHECK(f.size() == m.agents.size());
      std::set<AgentId> colours;
      for (const auto& vid : f) colours.insert(m.vertex(vid).agent);
      CHECK(colours.size() == m.agents.size());
    }
    // star is antitone in the simplex.
    for (const auto& f : m.facets) {
      auto whole = star_indices(m, f);
      for (const auto& vid : f) {
        auto part = star_indices(m, {vid});
        for (int idx : whole)
          CHECK(std::find(part.begin(), part.end(), idx) != part.end());
      }
    }
  }
}
