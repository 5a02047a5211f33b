#include <doctest.h>

#include "epiplex/duality.hpp"
#include "epiplex/semantics.hpp"
#include "helpers.hpp"

using namespace epiplex;
using testing::get_kripke;
using testing::get_simplicial;

namespace {

bool facet_truth(const SimplicialModel& m, const char* facet_vids, const char* formula) {
  Simplex f;
  std::string part;
  for (const char* p = facet_vids;; ++p) {
    if (*p == ',' || *p == '\0') {
      f.push_back(part);
      part.clear();
      if (*p == '\0') break;
    } else {
      part += *p;
    }
  }
  return eval_facet(m, make_simplex(f), epiplex::bind(parse_formula(formula),
                                                      signature_of(m)));
}

}  // namespace

TEST_CASE("kripke evaluation on the three-state chain") {
  auto m = get_kripke("sec6-chain3");
  auto eval = [&](const char* state, const char* formula) {
    return eval_kripke(m, state, epiplex::bind(parse_formula(formula),
                                               {m.agents, m.declared_atoms}));
  };
  CHECK(!eval("t", "K[a] p"));
  CHECK(eval("t", "Khat[a] p"));
  CHECK(eval("t", "K[a] true"));
  CHECK(eval("s", "K[b] p"));
  CHECK(!eval("u", "K[a] ~p"));
}

TEST_CASE("distributed knowledge on the square model") {
  auto m = get_kripke("ex7.2-square");
  auto bound = epiplex::bind(parse_formula("D[a,b] p"), {m.agents, m.declared_atoms});
  CHECK(eval_kripke(m, "s", bound));
  CHECK(eval_kripke(m, "v", bound));
  CHECK(!eval_kripke(m, "t", bound));
  // No individual agent knows p anywhere.
  auto ka = epiplex::bind(parse_formula("K[a] p | K[b] p"), {m.agents, m.declared_atoms});
  for (const auto& s : m.states) CHECK(!eval_kripke(m, s.id, ka));
}

TEST_CASE("facet semantics golden truths from the three-facet model") {
  auto m = get_simplicial("ex5.1");
  CHECK(facet_truth(m, "a0,c1,b1", "K[a] ~p_a"));
  CHECK(facet_truth(m, "a1,c1,b1", "K[a] p_a"));
  CHECK(!facet_truth(m, "a1,c1,b1", "K[a] ~p_a"));
  CHECK(facet_truth(m, "a0,c1,b1", "p_b & p_c"));
}

TEST_CASE("group knowledge golden truths from the four-facet model") {
  auto c = get_simplicial("ex4.2-C");
  auto cp = get_simplicial("ex4.2-Cprime");
  const char* common = "C[a,b] (K[c] p_c -> (K[a] ~p_a | K[b] ~p_b))";
  CHECK(facet_truth(cp, "a0,b1,c1", common));
  CHECK(!facet_truth(c, "a0,b1,c1", common));
  CHECK(!facet_truth(c, "a0,b1,c1", "C[a,b] (K[a] ~p_a | K[b] ~p_b)"));
  CHECK(facet_truth(c, "a1,b1,c0", "K[c] (K[a] p_a & K[b] p_b)"));
  CHECK(!facet_truth(c, "a1,b1,c0", "C[a,b] (K[a] p_a & K[b] p_b)"));

  CHECK(facet_truth(c, "a1,b1,c1", "D[a,b,c] (p_a & p_b & p_c)"));
  CHECK(!facet_truth(c, "a1,b1,c1", "D[a,c] (p_a & p_b & p_c)"));
}

TEST_CASE("common distributed knowledge splits the fans") {
  auto m = get_simplicial("ex7.3-Cprime");
  CHECK(facet_truth(m, "a0,c1,b1", "CDdim[1] p_c"));
  CHECK(!facet_truth(m, "a0,c1,b1", "C[a,b,c] p_c"));
  CHECK(facet_truth(m, "a2,c0,b0", "CDdim[1] ~p_c"));
  // The family form subsumes the dimension form.
  CHECK(facet_truth(m, "a0,c1,b1", "CD[{a,b},{a,c},{b,c}] p_c"));
}

TEST_CASE("multipoint semantics from the local-semantics example") {
  auto m = get_simplicial("ex5.1");
  auto bound = [&](const char* text) {
    return epiplex::bind(parse_formula(text), signature_of(m));
  };
  CHECK(!eval_multipoint(m, make_simplex({"b1", "c1"}), bound("K[a] ~p_a")));
  CHECK(eval_multipoint(m, {"c1"}, bound("K[c] (p_a | p_b)")));
  // At a facet multipoint coincides with facet truth.
  auto facet = make_simplex({"a0", "b1", "c1"});
  CHECK(eval_multipoint(m, facet, bound("K[a] ~p_a")) ==
        eval_facet(m, facet, bound("K[a] ~p_a")));
  CHECK_THROWS_AS(eval_multipoint(m, make_simplex({"a0", "b0"}), bound("true")), Error);
}

TEST_CASE("group operators work pointwise at simplices through multipoint") {
  // On the edge {a0,b1} agent a knows its value is 0, but a and b do not
  // commonly know it: the common-knowledge closure runs into the all-true
  // middle facet.
  auto m = get_simplicial("ex4.2-C");
  auto bound = [&](const char* text) {
    return epiplex::bind(parse_formula(text), signature_of(m));
  };
  auto edge = make_simplex({"a0", "b1"});
  CHECK(eval_multipoint(m, edge, bound("K[a] ~p_a")));
  CHECK(!eval_multipoint(m, edge, bound("C[a,b] ~p_a")));
  CHECK(eval_multipoint(m, edge, bound("D[a,b] (~p_a & p_b)")));
}

TEST_CASE("restricted semantics and its undefined cases") {
  auto m = get_simplicial("ex5.1");
  auto bound = [&](const char* text) {
    return epiplex::bind(parse_formula(text), signature_of(m));
  };
  CHECK(eval_restricted(m, make_simplex({"b1", "c1"}), bound("K[b] p_c & ~K[c] p_b")));
  CHECK(eval_restricted(m, {"c1"}, bound("K[c] p_c")));
  CHECK_THROWS_AS(eval_restricted(m, make_simplex({"b1", "c1"}), bound("K[a] ~p_a")),
                  Error);
  CHECK_THROWS_AS(eval_restricted(m, {"c1"}, bound("K[c] (p_a | p_b)")), Error);
  try {
    eval_restricted(m, {"c1"}, bound("K[c] (p_a | p_b)"));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FormulaOutsideLanguage);
  }
}

TEST_CASE("simplex semantics guards on colour membership") {
  auto m = get_simplicial("ex5.1");
  auto bound = [&](const char* text) {
    return epiplex::bind(parse_formula(text), signature_of(m));
  };
  CHECK(!eval_simplex(m, {"a0"}, bound("K[b] p_b")));  // b not a colour of {a0}
  CHECK(eval_simplex(m, make_simplex({"a0", "c1", "b1"}), bound("K[a] ~p_a")));
  CHECK(eval_simplex(m, {"a0"}, bound("~p_a")));
  CHECK(eval_simplex(m, make_simplex({"a0", "c1", "b1"}), bound("~p_a")));
}

TEST_CASE("S5 axioms hold on generated models") {
  std::mt19937_64 rng(31);
  int cases = 0;
  while (cases < 300) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    auto gen = testing::generator_for(m);
    SimplicialEvaluator ev(m);
    for (int i = 0; i < 3 && cases < 300; ++i, ++cases) {
      auto f = gen(rng, 2);
      const auto& agent = m.agents.names[rng() % m.agents.size()];
      auto t = fml::implies(fml::know(agent, f), f);
      auto four = fml::implies(fml::know(agent, f), fml::know(agent, fml::know(agent, f)));
      auto five = fml::implies(fml::lnot(fml::know(agent, f)),
                               fml::know(agent, fml::lnot(fml::know(agent, f))));
      for (std::size_t x = 0; x < m.facets.size(); ++x) {
        CHECK(ev.at_facet(static_cast<int>(x), t));
        CHECK(ev.at_facet(static_cast<int>(x), four));
        CHECK(ev.at_facet(static_cast<int>(x), five));
      }
    }
  }
}

TEST_CASE("agents know their local atoms") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    SimplicialEvaluator ev(m);
    for (const auto& p : m.all_atoms()) {
      auto owner = m.atom_owner(p);
      REQUIRE(owner.has_value());
      auto positive = fml::implies(fml::atom(p), fml::know(*owner, fml::atom(p)));
      auto negative = fml::implies(fml::lnot(fml::atom(p)),
                                   fml::know(*owner, fml::lnot(fml::atom(p))));
      for (std::size_t x = 0; x < m.facets.size(); ++x) {
        CHECK(ev.at_facet(static_cast<int>(x), positive));
        CHECK(ev.at_facet(static_cast<int>(x), negative));
      }
    }
  }
}

namespace {

// Random formula inside the language of the given colours.
FormulaPtr restricted_formula(const SimplicialModel& m, const std::vector<AgentId>& colours,
                              std::mt19937_64& rng, int depth) {
  auto tag = tag_for(m, colours);
  testing::FormulaGen gen(colours, {tag.atoms.begin(), tag.atoms.end()});
  return gen(rng, depth);
}

}  // namespace

TEST_CASE("restricted and multipoint semantics agree on the restricted language") {
  std::mt19937_64 rng(41);
  int cases = 0;
  while (cases < 300) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    SimplicialEvaluator ev(m);
    // Random face of a random facet.
    const auto& facet = m.facets[rng() % m.facets.size()];
    Simplex face;
    for (const auto& vid : facet)
      if (rng() % 2) face.push_back(vid);
    if (face.empty()) face.push_back(facet[rng() % facet.size()]);
    face = make_simplex(face);
    std::vector<AgentId> colours;
    for (const auto& vid : face) colours.push_back(m.vertex(vid).agent);

    for (int i = 0; i < 4 && cases < 300; ++i, ++cases) {
      auto f = restricted_formula(m, colours, rng, 3);
      CHECK(ev.restricted(face, f) == ev.multipoint(face, f));
    }
  }
}

TEST_CASE("simplex truth in the restricted language propagates to the star") {
  std::mt19937_64 rng(43);
  int cases = 0;
  while (cases < 300) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    SimplicialEvaluator ev(m);
    const auto& facet = m.facets[rng() % m.facets.size()];
    Simplex face;
    for (const auto& vid : facet)
      if (rng() % 2) face.push_back(vid);
    if (face.empty()) face.push_back(facet[rng() % facet.size()]);
    face = make_simplex(face);
    std::vector<AgentId> colours;
    for (const auto& vid : face) colours.push_back(m.vertex(vid).agent);

    for (int i = 0; i < 4 && cases < 300; ++i, ++cases) {
      auto f = restricted_formula(m, colours, rng, 3);
      if (!ev.at_simplex(face, f)) continue;
      // Every simplex extending the face keeps the truth.
      for (int fi : star_indices(m, face)) {
        CHECK(ev.at_facet(fi, f));
        auto larger = face;
        for (const auto& vid : m.facets[fi])
          if (rng() % 2) larger.push_back(vid);
        larger = make_simplex(larger);
        CHECK(ev.at_simplex(larger, f));
      }
    }
  }
}

TEST_CASE("face restriction keeps truth inside the smaller language") {
  std::mt19937_64 rng(47);
  int cases = 0;
  while (cases < 200) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    SimplicialEvaluator ev(m);
    const auto& facet = m.facets[rng() % m.facets.size()];
    Simplex face;
    for (const auto& vid : facet)
      if (rng() % 2) face.push_back(vid);
    if (face.empty()) face.push_back(facet[rng() % facet.size()]);
    face = make_simplex(face);
    std::vector<AgentId> colours;
    for (const auto& vid : face) colours.push_back(m.vertex(vid).agent);

    for (int i = 0; i < 4 && cases < 200; ++i, ++cases) {
      auto f = restricted_formula(m, colours, rng, 2);
      if (eval_simplex(m, facet, f)) CHECK(ev.at_simplex(face, f));
    }
  }
}

TEST_CASE("CDdim[0] coincides with common knowledge of everyone") {
  std::mt19937_64 rng(53);
  int cases = 0;
  while (cases < 200) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    auto gen = testing::generator_for(m);
    SimplicialEvaluator ev(m);
    for (int i = 0; i < 4 && cases < 200; ++i, ++cases) {
      auto f = gen(rng, 2);
      auto cd0 = fml::common_distributed_dim(0, f);
      auto call = fml::common(m.agents.names, f);
      for (std::size_t x = 0; x < m.facets.size(); ++x)
        CHECK(ev.at_facet(static_cast<int>(x), cd0) ==
              ev.at_facet(static_cast<int>(x), call));
    }
  }
}

TEST_CASE("full-coalition distributed knowledge is facet truth") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    auto gen = testing::generator_for(m);
    SimplicialEvaluator ev(m);
    auto f = gen(rng, 2);
    auto dall = fml::distributed(m.agents.names, f);
    for (std::size_t x = 0; x < m.facets.size(); ++x)
      CHECK(ev.at_facet(static_cast<int>(x), dall) == ev.at_facet(static_cast<int>(x), f));
  }
}

TEST_CASE("top-dimension common distributed knowledge covers manifolds") {
  std::mt19937_64 rng(61);
  int tested = 0;
  for (int trial = 0; trial < 200 && tested < 30; ++trial) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    if (!is_manifold(m).is_manifold) continue;
    ++tested;
    auto gen = testing::generator_for(m);
    SimplicialEvaluator ev(m);
    auto f = gen(rng, 2);
    auto cd = fml::common_distributed_dim(m.dimension() - 1 >= 0 ? m.dimension() - 1 : 0, f);
    for (std::size_t x = 0; x < m.facets.size(); ++x) {
      if (!ev.at_facet(static_cast<int>(x), cd)) continue;
      for (std::size_t y = 0; y < m.facets.size(); ++y)
        CHECK(ev.at_facet(static_cast<int>(y), f));
    }
  }
  CHECK(tested > 0);
}

TEST_CASE("closure components match the brute-force fixed point") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 12, rng());
    const int nf = static_cast<int>(m.facets.size());
    if (nf > 12) continue;
    SimplicialEvaluator ev(m);

    std::vector<AgentId> group;
    for (const auto& a : m.agents.names)
      if (rng() % 2) group.push_back(a);
    if (group.empty()) group.push_back(m.agents.names[0]);

    auto shares_colour = [&](int y, int z) {
      for (const auto& vid : simplex_intersection(m.facets[y], m.facets[z]))
        for (const auto& a : group)
          if (m.vertex(vid).agent == a) return true;
      return false;
    };
    int m_dim = static_cast<int>(rng() % m.agents.size());
    auto shares_dim = [&](int y, int z) {
      return static_cast<int>(
                 simplex_intersection(m.facets[y], m.facets[z]).size()) >= m_dim + 1;
    };
    // A random family of coalitions for the general operator.
    std::vector<std::vector<AgentId>> family;
    for (int i = 0; i < 2; ++i) {
      std::vector<AgentId> coalition;
      for (const auto& a : m.agents.names)
        if (rng() % 2) coalition.push_back(a);
      if (coalition.empty()) coalition.push_back(m.agents.names[rng() % m.agents.size()]);
      family.push_back(coalition);
    }
    auto shares_family = [&](int y, int z) {
      auto shared = simplex_intersection(m.facets[y], m.facets[z]);
      std::set<AgentId> colours;
      for (const auto& vid : shared) colours.insert(m.vertex(vid).agent);
      for (const auto& coalition : family) {
        bool inside = true;
        for (const auto& a : coalition)
          if (!colours.count(a)) inside = false;
        if (inside) return true;
      }
      return false;
    };

    for (int x = 0; x < nf; ++x) {
      auto expect_common = oracle::naive_closure(nf, {x}, shares_colour);
      auto got_common = ev.common_reach(group, x);
      CHECK(expect_common == std::set<int>(got_common.begin(), got_common.end()));

      auto expect_dim = oracle::naive_closure(nf, {x}, shares_dim);
      auto got_dim = ev.dim_reach(m_dim, x);
      CHECK(expect_dim == std::set<int>(got_dim.begin(), got_dim.end()));

      auto expect_family = oracle::naive_closure(nf, {x}, shares_family);
      auto got_family = ev.family_reach(family, x);
      CHECK(expect_family == std::set<int>(got_family.begin(), got_family.end()));
    }
  }
}

TEST_CASE("CDdim agrees with the explicit coalition family") {
  // CDdim[m] short-circuits the size-(m+1) coalition family; both routes must
  // agree facet by facet.
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_simplicial(3, 8, rng());
    auto gen = testing::generator_for(m);
    auto f = gen(rng, 2);
    int dim = static_cast<int>(rng() % 3);
    std::vector<std::vector<AgentId>> family;
    const int n = static_cast<int>(m.agents.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != dim + 1) continue;
      std::vector<AgentId> coalition;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) coalition.push_back(m.agents.names[i]);
      family.push_back(coalition);
    }
    SimplicialEvaluator ev(m);
    auto direct = fml::common_distributed_dim(dim, f);
    auto expanded = fml::common_distributed(family, f);
    for (std::size_t x = 0; x < m.facets.size(); ++x)
      CHECK(ev.at_facet(static_cast<int>(x), direct) ==
            ev.at_facet(static_cast<int>(x), expanded));
  }
}

TEST_CASE("E nodes evaluate as the conjunction of individual knowledge") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    auto gen = testing::generator_for(m);
    SimplicialEvaluator ev(m);
    auto f = gen(rng, 2);
    std::vector<AgentId> group;
    for (const auto& a : m.agents.names)
      if (rng() % 2) group.push_back(a);
    if (group.empty()) group.push_back(m.agents.names[0]);

    auto raw = fml::everyone(group, f);
    auto desugared = epiplex::bind(raw, signature_of(m));
    std::vector<FormulaPtr> parts;
    for (const auto& a : group) parts.push_back(fml::know(a, f));
    auto manual = fml::conj(parts);
    for (std::size_t x = 0; x < m.facets.size(); ++x) {
      bool direct = ev.at_facet(static_cast<int>(x), raw);
      CHECK(direct == ev.at_facet(static_cast<int>(x), desugared));
      CHECK(direct == ev.at_facet(static_cast<int>(x), manual));
    }
  }
}

TEST_CASE("kripke group closures match the facet closures through kappa") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = random_simplicial(2 + static_cast<int>(rng() % 3), 8, rng());
    auto k = kappa(c);
    auto gen = testing::generator_for(c, true);
    SimplicialEvaluator se(c);
    KripkeEvaluator ke(k.model);
    for (int i = 0; i < 5; ++i) {
      auto f = gen(rng, 3);
      for (std::size_t x = 0; x < c.facets.size(); ++x)
        CHECK(se.at_facet(static_cast<int>(x), f) ==
              ke.at_state(static_cast<int>(x), f));
    }
  }
}
