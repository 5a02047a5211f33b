#include <doctest.h>

#include "epiplex/bisim.hpp"
#include "epiplex/duality.hpp"
#include "epiplex/semantics.hpp"
#include "helpers.hpp"

using namespace epiplex;
using testing::get_kripke;
using testing::get_simplicial;

TEST_CASE("the big uniform triangle collapses to one facet") {
  auto big = get_simplicial("ex4.1-left-big");
  auto small = get_simplicial("ex4.1-left-small");
  CHECK(total_bisimilar(big, small));
  // All four facets relate to the single facet.
  CHECK(max_bisimulation(big, small).pairs.size() == 4);
}

TEST_CASE("the second pair of the bisimilarity example") {
  auto big = get_simplicial("ex4.1-right-big");
  auto small = get_simplicial("ex4.1-right-small");
  CHECK(total_bisimilar(big, small));
}

TEST_CASE("the four-facet model is not bisimilar to its middle-less variant") {
  auto c = get_simplicial("ex4.2-C");
  auto cp = get_simplicial("ex4.2-Cprime");
  auto rel = max_bisimulation(c, cp);
  CHECK(rel.empty());
  auto unmatched = unmatched_facets(c, cp);
  // The all-true middle facet has no counterpart.
  bool f4 = false;
  for (int f : unmatched) f4 = f4 || c.facets[f] == make_simplex({"a1", "b1", "c1"});
  CHECK(f4);
}

TEST_CASE("cycles of even length are all bisimilar") {
  auto c4 = get_simplicial("ex4.3-cycle4");
  auto c6 = get_simplicial("ex4.3-cycle6");
  auto rel = max_bisimulation(c4, c6);
  // Uniform values: the maximal bisimulation is the full facet product.
  CHECK(rel.pairs.size() == c4.facets.size() * c6.facets.size());
  CHECK(total_bisimilar(c4, c6));
  CHECK(total_bisimilar(c4, get_simplicial("ex4.3-edge")));
}

TEST_CASE("subdivision of a mixed-value path is not bisimilar") {
  auto path = get_simplicial("sec4-path");
  auto sub = get_simplicial("sec4-path-sub");
  CHECK(max_bisimulation(path, sub).empty());
  CHECK(!bisimilar_pointed(path, 1, sub, 1));
}

TEST_CASE("subdivision of the single edge is bisimilar") {
  auto edge = get_simplicial("sec4-edge");
  auto sub = get_simplicial("sec4-edge-sub");
  CHECK(total_bisimilar(edge, sub));
}

TEST_CASE("a model is totally bisimilar to itself") {
  auto m = get_simplicial("ex4.2-C");
  CHECK(total_bisimilar(m, m));
  for (std::size_t f = 0; f < m.facets.size(); ++f)
    CHECK(bisimilar_pointed(m, static_cast<int>(f), m, static_cast<int>(f)));
}

TEST_CASE("mismatched agent sets are rejected") {
  CHECK_THROWS_AS(max_bisimulation(get_simplicial("ex4.3-edge"),
                                   get_simplicial("ex4.1-left-small")),
                  Error);
}

TEST_CASE("kripke quotients") {
  // Distinct valuations keep the improper two-state model intact.
  auto improper = get_kripke("sec6-improper2");
  CHECK(kripke_quotient(improper).states.size() == 2);

  // The square with duplicated rows halves.
  auto square = get_kripke("ex6.1-square");
  auto q = kripke_quotient(square);
  CHECK(q.states.size() == 2);

  // A minimal model stays put.
  auto chain = get_kripke("sec6-chain3");
  auto qc = kripke_quotient(chain);
  CHECK(qc.states.size() == 3);
  CHECK(kripke_isomorphic(qc, chain).has_value());
}

TEST_CASE("simplicial quotients") {
  auto cyc = get_simplicial("ex4.3-cycle4");
  auto q = simplicial_quotient(cyc);
  CHECK(q.facets.size() == 1);
  CHECK(q.agents.size() == 2);

  auto single = get_simplicial("ex4.1-left-small");
  CHECK(is_isomorphic(simplicial_quotient(single), single).has_value());

  auto big = get_simplicial("ex4.1-left-big");
  CHECK(simplicial_quotient(big).facets.size() == 1);
}

TEST_CASE("group bisimulation separates the distributed-knowledge pair") {
  auto two = get_kripke("ex7.2-2state");
  auto square = get_kripke("ex7.2-square");
  CHECK(!kripke_max_bisimulation(two, square).empty());
  CHECK(group_max_bisimulation(two, square).empty());

  // Identity-containing and total on the model itself.
  auto self_rel = group_max_bisimulation(square, square);
  for (std::size_t s = 0; s < square.states.size(); ++s)
    CHECK(std::find(self_rel.pairs.begin(), self_rel.pairs.end(),
                    std::make_pair(static_cast<int>(s), static_cast<int>(s))) !=
          self_rel.pairs.end());
}

TEST_CASE("group bisimulation refines standard bisimulation") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 25; ++trial) {
    auto m1 = random_local_proper(2 + static_cast<int>(rng() % 2), 8, rng());
    auto m2 = random_local_proper(static_cast<int>(m1.agents.size()), 8, rng());
    auto standard = kripke_max_bisimulation(m1, m2);
    auto group = group_max_bisimulation(m1, m2);
    std::set<std::pair<int, int>> std_set(standard.pairs.begin(), standard.pairs.end());
    for (auto pair : group.pairs) CHECK(std_set.count(pair));
  }
}

TEST_CASE("coalition enrichment turns the pair bisimilar again") {
  auto square3 = enrich_with_coalitions(get_kripke("ex7.2-square"), {{"a", "b"}});
  auto x3 = get_kripke("ex7.2-x3");
  auto rel = kripke_max_bisimulation(square3, x3);
  CHECK(!rel.empty());
  std::vector<bool> left(square3.states.size(), false), right(x3.states.size(), false);
  for (auto [s, t] : rel.pairs) {
    left[s] = true;
    right[t] = true;
  }
  CHECK(std::all_of(left.begin(), left.end(), [](bool b) { return b; }));
  CHECK(std::all_of(right.begin(), right.end(), [](bool b) { return b; }));
}

TEST_CASE("check_relation classifies the collapse of the 4-cycle") {
  auto cyc = get_simplicial("ex4.3-cycle4");
  auto edge = get_simplicial("ex4.3-edge");
  FacetRelation induced;
  for (int f = 0; f < 4; ++f) induced.pairs.emplace_back(f, 0);
  auto check = check_relation(cyc, edge, induced);
  // A value-preserving chromatic simplicial map induces at least a simulation;
  // this one satisfies back as well.
  CHECK(check.verdict == RelationClass::Bisimulation);

  FacetRelation identity;
  for (int f = 0; f < 4; ++f) identity.pairs.emplace_back(f, f);
  CHECK(check_relation(cyc, cyc, identity).verdict == RelationClass::Bisimulation);
}

TEST_CASE("check_relation reports the violated clause with a witness") {
  auto path = get_simplicial("sec4-path");
  auto sub = get_simplicial("sec4-path-sub");
  // Relate only the one-valued middle edges; forth fails on a neighbour.
  FacetRelation rel;
  rel.pairs.emplace_back(path.facet_index(make_simplex({"a1", "b1"})),
                         sub.facet_index(make_simplex({"a1", "b1x"})));
  auto check = check_relation(path, sub, rel);
  CHECK(check.verdict == RelationClass::Neither);
  CHECK(check.violated_clause == "forth");
  CHECK(!check.witness.empty());

  // Atom mismatches are flagged first.
  FacetRelation bad;
  bad.pairs.emplace_back(path.facet_index(make_simplex({"b0", "a1"})),
                         sub.facet_index(make_simplex({"a1", "b1x"})));
  CHECK(check_relation(path, sub, bad).violated_clause == "atoms");
}

TEST_CASE("a simulation that is not a bisimulation") {
  // Map the edge into the path: forth holds from the single facet, back
  // fails because the path has more behaviour.
  auto edge = get_simplicial("sec4-edge");
  auto sub = get_simplicial("sec4-edge-sub");
  FacetRelation rel;
  rel.pairs.emplace_back(0, sub.facet_index(make_simplex({"a1", "b1x"})));
  auto check = check_relation(edge, sub, rel);
  CHECK(check.verdict == RelationClass::Simulation);
  CHECK(check.violated_clause == "back");
}

TEST_CASE("bisimilar pairs are modally equivalent") {
  std::mt19937_64 rng(83);
  int cases = 0;
  while (cases < 500) {
    auto c1 = random_simplicial(2 + static_cast<int>(rng() % 3), 6, rng());
    auto c2 = random_simplicial(static_cast<int>(c1.agents.size()), 6, rng());
    auto rel = max_bisimulation(c1, c2);
    if (rel.empty()) continue;
    auto gen = testing::generator_for(c1, true);
    SimplicialEvaluator e1(c1), e2(c2);
    for (int i = 0; i < 5 && cases < 500; ++i, ++cases) {
      auto f = gen(rng, 3);
      for (auto [x, y] : rel.pairs) CHECK(e1.at_facet(x, f) == e2.at_facet(y, f));
    }
  }
}

TEST_CASE("partition refinement matches the greatest-fixpoint oracle") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 40; ++trial) {
    auto c1 = random_simplicial(2 + static_cast<int>(rng() % 3), 6, rng());
    auto c2 = random_simplicial(static_cast<int>(c1.agents.size()), 6, rng());
    if (c1.facets.size() > 10 || c2.facets.size() > 10) continue;
    auto rel = max_bisimulation(c1, c2);
    auto expect = oracle::naive_max_bisimulation(c1, c2);
    CHECK(std::set<std::pair<int, int>>(rel.pairs.begin(), rel.pairs.end()) == expect);
  }
}

TEST_CASE("sigma and kappa preserve bisimilarity in all four directions") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 25; ++trial) {
    auto m1 = random_local_proper(2 + static_cast<int>(rng() % 2), 6, rng());
    auto m2 = random_local_proper(static_cast<int>(m1.agents.size()), 6, rng());
    bool kripke_bisim = !kripke_max_bisimulation(m1, m2).empty();
    bool simp_bisim = !max_bisimulation(sigma(m1).model, sigma(m2).model).empty();
    CHECK(kripke_bisim == simp_bisim);
    if (kripke_bisim) {
      auto k1 = kappa(sigma(m1).model).model;
      auto k2 = kappa(sigma(m2).model).model;
      CHECK(!kripke_max_bisimulation(k1, k2).empty());
    }

    auto c1 = random_simplicial(2 + static_cast<int>(rng() % 2), 6, rng());
    auto c2 = random_simplicial(static_cast<int>(c1.agents.size()), 6, rng());
    bool facet_bisim = !max_bisimulation(c1, c2).empty();
    bool back_bisim = !kripke_max_bisimulation(kappa(c1).model, kappa(c2).model).empty();
    CHECK(facet_bisim == back_bisim);
    if (facet_bisim) {
      auto s1 = sigma(kappa(c1).model).model;
      auto s2 = sigma(kappa(c2).model).model;
      CHECK(!max_bisimulation(s1, s2).empty());
    }
  }
}

TEST_CASE("impropriety of quotients is detected") {
  // The proper square halves into two classes related by every agent; that
  // shape is what the simplicial quotient guards against.
  auto square = get_kripke("ex7.2-square");
  auto q = kripke_quotient(square);
  REQUIRE(q.states.size() == 2);
  CHECK(!analyze(q).is_proper);
}

TEST_CASE("induced vertex relations preserve simplices both ways") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    auto c1 = random_simplicial(2 + static_cast<int>(rng() % 3), 6, rng());
    auto c2 = random_simplicial(static_cast<int>(c1.agents.size()), 6, rng());
    auto rel = max_bisimulation(c1, c2);
    if (rel.empty()) continue;
    // Vertex pairs induced by pairing matching colours of related facets.
    std::set<std::pair<VertexId, VertexId>> vrel;
    for (auto [x, y] : rel.pairs)
      for (std::size_t a = 0; a < c1.agents.size(); ++a)
        vrel.insert({c1.vertices[c1.facet_vertex(x, static_cast<int>(a))].id,
                     c2.vertices[c2.facet_vertex(y, static_cast<int>(a))].id});

    auto simplex_preserving = [&](const SimplicialModel& from, const SimplicialModel& to,
                                  bool forward) {
      for (const auto& facet : from.facets)
        for (auto& face : faces(facet)) {
          // Only faces fully inside the relation's domain matter.
          std::vector<std::vector<VertexId>> images(face.size());
          bool in_domain = true;
          for (std::size_t i = 0; i < face.size(); ++i) {
            for (const auto& [v, w] : vrel) {
              const auto& from_v = forward ? v : w;
              const auto& to_v = forward ? w : v;
              if (from_v == face[i]) images[i].push_back(to_v);
            }
            if (images[i].empty()) in_domain = false;
          }
          if (!in_domain) continue;
          // Some choice of images must be a simplex of `to`.
          std::function<bool(std::size_t, Simplex)> pick = [&](std::size_t i,
                                                               Simplex acc) {
            if (i == images.size()) {
              acc = make_simplex(acc);
              if (acc.size() != face.size()) return false;
              for (const auto& f2 : to.facets)
                if (simplex_subset(acc, f2)) return true;
              return false;
            }
            for (const auto& w : images[i]) {
              auto next = acc;
              next.push_back(w);
              if (pick(i + 1, next)) return true;
            }
            return false;
          };
          if (!pick(0, {})) return false;
        }
      return true;
    };
    CHECK(simplex_preserving(c1, c2, true));
    CHECK(simplex_preserving(c2, c1, false));
  }
}

TEST_CASE("covering: the 4-cycle folds onto the edge") {
  auto cyc = get_simplicial("ex4.3-cycle4");
  auto edge = get_simplicial("ex4.3-edge");
  VertexMap fold;
  fold.map = {{"a0", "a0"}, {"a1", "a0"}, {"b0", "b0"}, {"b1", "b0"}};
  auto report = is_covering(cyc, fold, edge);
  CHECK(report.ok);
  CHECK(report.induced_total_bisimulation);
}

TEST_CASE("covering: identity map covers") {
  auto m = get_simplicial("ex4.2-C");
  VertexMap identity;
  for (const auto& v : m.vertices) identity.map[v.id] = v.id;
  CHECK(is_covering(m, identity, m).ok);
}

TEST_CASE("covering: overlapping preimages are rejected with a witness") {
  // Path a0-b0-a1 folded onto a single edge: the preimage of the edge has
  // three vertices and cannot split into disjoint edges.
  SimplicialModel path;
  path.agents.names = {"a", "b"};
  path.vertices = {{"a0", "a", {}}, {"b0", "b", {}}, {"a1", "a", {}}};
  path.facets = {make_simplex({"a0", "b0"}), make_simplex({"b0", "a1"})};
  path.finalize();
  auto edge = get_simplicial("ex4.3-edge");
  VertexMap fold;
  fold.map = {{"a0", "a0"}, {"a1", "a0"}, {"b0", "b0"}};
  auto report = is_covering(path, fold, edge);
  CHECK(!report.ok);
  CHECK(report.witness_simplex == "{a0,b0}");
}

TEST_CASE("covering rejects non-simplicial and value-breaking maps") {
  auto cyc = get_simplicial("ex4.3-cycle4");
  auto path = get_simplicial("sec4-path");
  VertexMap wrong;
  wrong.map = {{"a0", "a1"}, {"a1", "a1"}, {"b0", "b0"}, {"b1", "b0"}};
  // Values differ (a1 carries one_a in the path model).
  CHECK_THROWS_AS(is_covering(cyc, wrong, path), Error);
}

TEST_CASE("refinement scales to large random models") {
  // Smoke test; the timed budget lives in the acceptance suite.
  std::mt19937_64 rng(103);
  SimplicialModel m;
  m.agents.names = {"a", "b", "c", "d"};
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 40; ++i) {
      Vertex v;
      v.id = m.agents.names[a] + std::to_string(i);
      v.agent = m.agents.names[a];
      if (i % 2) v.atoms.insert("p_" + m.agents.names[a]);
      m.vertices.push_back(std::move(v));
    }
  std::set<Simplex> facets;
  while (facets.size() < 2000) {
    Simplex f;
    for (int a = 0; a < 4; ++a)
      f.push_back(m.agents.names[a] + std::to_string(rng() % 40));
    facets.insert(make_simplex(f));
  }
  m.facets.assign(facets.begin(), facets.end());
  m.finalize();
  auto classes = bisimilarity_classes(m);
  CHECK(!classes.empty());
}
