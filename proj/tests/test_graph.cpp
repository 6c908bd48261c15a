#include "doctest.h"

#include <algorithm>
#include <random>

#include "latent/graph.hpp"
#include "latent/registry.hpp"
#include "oracles.hpp"

using namespace latent;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

CausalScenario interrupted_ext_bell() {
  return interrupt(scenario("ext_bell_exo"), "Y", {{"B"}, {"C"}});
}

}  // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("validate classifies roles structurally") {
  Classification c = validate(scenario("ext_bell_exo"));
  CHECK(c.settings == std::vector<std::string>{"X", "Y"});
  CHECK(contains(c.outcomes, "A"));
  CHECK(contains(c.outcomes, "B"));
  CHECK(contains(c.outcomes, "C"));
  CHECK(c.latents == std::vector<std::string>{"L_ABC"});
  CHECK(c.intermediate_latents.empty());

  Classification bc = validate(scenario("ext_bell_bc"));
  CHECK(bc.intermediate_latents == std::vector<std::string>{"M_BC"});

  CHECK_THROWS_AS(CausalScenario({{"A", NodeKind::Observed, 2}}, {{"A", "A"}}),
                  CycleDetected);
  CHECK_THROWS_AS(CausalScenario({{"A", NodeKind::Observed, 2},
                                  {"A", NodeKind::Observed, 2}},
                                 {}),
                  DuplicateName);
  CHECK_THROWS_AS(CausalScenario({{"A", NodeKind::Observed, 0}}, {}),
                  ObservedWithoutCardinality);
}

TEST_CASE("exogenize maps the BC-intermediate variant onto the exogenous one") {
  ExogenizeResult r = exogenize(scenario("ext_bell_bc"));
  CHECK(r.classically_equivalent_only);
  CHECK(r.graph == scenario("ext_bell_exo"));

  ExogenizeResult fix = exogenize(scenario("ext_bell_exo"));
  CHECK_FALSE(fix.classically_equivalent_only);
  CHECK(fix.graph == scenario("ext_bell_exo"));

  CHECK(exogenize(scenario("tetra_bc")).graph == scenario("tetra"));
  CHECK(exogenize(scenario("tetra_ac_ad_bd")).graph == scenario("tetra"));
  CHECK(exogenize(scenario("ext_bell_2il")).graph == scenario("ext_bell_exo"));
}

TEST_CASE("exogenize is idempotent and preserves observed roles") {
  for (const auto& id : scenario_ids()) {
    CausalScenario g = scenario(id);
    ExogenizeResult once = exogenize(g);
    ExogenizeResult twice = exogenize(once.graph);
    CHECK(once.graph == twice.graph);
    CHECK_FALSE(twice.classically_equivalent_only);
    Classification before = validate(g);
    Classification after = validate(once.graph);
    CHECK(before.settings == after.settings);
    CHECK(before.outcomes == after.outcomes);
    CHECK(after.intermediate_latents.empty());
  }
}

TEST_CASE("exogenization_safe covers the three safe cases") {
  CHECK_FALSE(exogenization_safe(scenario("ext_bell_bc"), "M_BC"));

  // Single child.
  CausalScenario one_child({{"A", NodeKind::Observed, 2},
                            {"L", NodeKind::LatentQuantum},
                            {"M", NodeKind::LatentQuantum}},
                           {{"L", "M"}, {"M", "A"}, {"L", "A"}});
  CHECK(exogenization_safe(one_child, "M"));

  // Classical ancestors only.
  CausalScenario classical({{"A", NodeKind::Observed, 2},
                            {"B", NodeKind::Observed, 2},
                            {"L", NodeKind::LatentClassical},
                            {"M", NodeKind::LatentQuantum},
                            {"N", NodeKind::LatentClassical}},
                           {{"L", "M"}, {"N", "M"}, {"M", "A"}, {"M", "B"}});
  CHECK(exogenization_safe(classical, "M"));

  CHECK_THROWS_AS(exogenization_safe(scenario("ext_bell_bc"), "L_ABC"),
                  NotAnIntermediateLatent);
}

TEST_CASE("interrupt splits a setting per partition block") {
  CausalScenario f4 = interrupted_ext_bell();
  CHECK(f4.has_node("Y"));
  CHECK(f4.has_node("Y'"));
  CHECK(f4.children(f4.index_of("Y")) == std::vector<int>{f4.index_of("B")});
  CHECK(f4.children(f4.index_of("Y'")) == std::vector<int>{f4.index_of("C")});
  CHECK(f4.node(f4.index_of("Y'")).cardinality == 2);

  // Single-block split: isomorphic to the input.
  CausalScenario same = interrupt(scenario("ext_bell_exo"), "Y", {{"B", "C"}});
  CHECK(isomorphic(same, scenario("ext_bell_exo"),
                   {.match_observed_names = true, .match_cardinality = true}));

  // Symmetric interruption of X.
  CausalScenario fx = interrupt(scenario("ext_bell_exo"), "X", {{"A"}, {"C"}});
  CHECK(fx.children(fx.index_of("X'")) == std::vector<int>{fx.index_of("C")});

  CHECK_THROWS_AS(interrupt(scenario("ext_bell_exo"), "A", {{"B"}}), NotASetting);
  CHECK_THROWS_AS(interrupt(scenario("ext_bell_exo"), "Y", {{"B"}}),
                  InvalidPartition);
  CHECK_THROWS_AS(interrupt(scenario("ext_bell_exo"), "Y", {{"B"}, {"B", "C"}}),
                  InvalidPartition);
}

TEST_CASE("interrupt then merging copies recovers the input") {
  CausalScenario f4 = interrupted_ext_bell();
  // Contract Y' = Y by renaming and deduplicating edges.
  std::vector<Node> nodes;
  for (const auto& n : f4.nodes())
    if (n.name != "Y'") nodes.push_back(n);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [p, c] : f4.edges()) {
    auto fix = [](std::string s) { return s == "Y'" ? std::string("Y") : s; };
    edges.emplace_back(fix(f4.node(p).name), fix(f4.node(c).name));
  }
  CausalScenario merged(nodes, edges);
  CHECK(isomorphic(merged, scenario("ext_bell_exo"),
                   {.match_observed_names = true, .match_cardinality = true}));
}

TEST_CASE("d_separated matches the textbook verdicts") {
  CausalScenario f4 = interrupted_ext_bell();
  CHECK(d_separated(f4, {"Y'"}, {"A", "B"}, {"X", "Y"}));
  CausalScenario exo = scenario("ext_bell_exo");
  CHECK(d_separated(exo, {"X"}, {"B"}, {"Y"}));
  CHECK_FALSE(d_separated(exo, {"A"}, {"B"}, {}));
  CHECK_THROWS_AS(d_separated(exo, {"nope"}, {"B"}, {}), UnknownNode);
}

TEST_CASE("d_separated agrees with the path-enumeration oracle") {
  std::mt19937 rng(20240811);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int k = 4 + static_cast<int>(rng() % 5);  // up to 8 nodes
    CausalScenario g = oracles::random_dag(rng, k);
    // a handful of random (X, Y, Z) triples per graph
    for (int q = 0; q < 12; ++q) {
      std::set<std::string> X, Y, Z;
      for (int i = 0; i < k; ++i) {
        switch (rng() % 4) {
          case 0: X.insert(g.node(i).name); break;
          case 1: Y.insert(g.node(i).name); break;
          case 2: Z.insert(g.node(i).name); break;
          default: break;
        }
      }
      if (X.empty() || Y.empty()) continue;
      bool lib = d_separated(g, X, Y, Z);
      bool oracle = oracles::d_separated_paths(g, X, Y, Z);
      CHECK(lib == oracle);
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("nosignaling_constraints cover the interrupted-scenario families") {
  CausalScenario f4 = interrupted_ext_bell();
  auto cons = nosignaling_constraints(f4);
  auto has = [&](std::vector<std::string> outs, std::string free) {
    std::sort(outs.begin(), outs.end());
    for (const auto& c : cons)
      if (c.outputs == outs && c.free_settings == std::vector<std::string>{free})
        return true;
    return false;
  };
  CHECK(has({"B"}, "X"));        // Q(b|x,y,y') = Q(b|y,y')
  CHECK(has({"A", "C"}, "Y"));   // Q(a,c|x,y,y') = Q(a,c|x,y')
  CHECK(has({"A", "B"}, "Y'"));  // Q(a,b|x,y,y') = Q(a,b|x,y)

  // Complete family: brute force over (S, s) with the oracle d-separation.
  auto outs = f4.outcomes();
  auto sets = f4.settings();
  size_t expected = 0;
  for (unsigned mask = 1; mask < (1u << outs.size()); ++mask) {
    std::set<std::string> S;
    for (size_t b = 0; b < outs.size(); ++b)
      if (mask & (1u << b)) S.insert(f4.node(outs[b]).name);
    for (int s : sets) {
      std::set<std::string> Z;
      for (int t : sets)
        if (t != s) Z.insert(f4.node(t).name);
      if (oracles::d_separated_paths(f4, S, {f4.node(s).name}, Z)) ++expected;
    }
  }
  CHECK(cons.size() == expected);

  // Single-party scenario: no second setting to be independent of.
  CausalScenario single({{"X", NodeKind::Observed, 2}, {"A", NodeKind::Observed, 2}},
                        {{"X", "A"}});
  CHECK(nosignaling_constraints(single).empty());
}

TEST_CASE("reduce leaves an exogenous Bell DAG alone") {
  CHECK(reduce(scenario("bell")) == scenario("bell"));
  CHECK(reduce(scenario("ext_bell_exo")) == scenario("ext_bell_exo"));
}

TEST_CASE("inflation of the tetra scenario certifies the adjacent pairs") {
  Inflation inf = inflate(scenario("tetra"), tetra_inflation_spec());
  auto has_pair = [&](const std::string& a, const std::string& b) {
    std::vector<std::string> want{a, b};
    std::sort(want.begin(), want.end());
    for (auto s : inf.injectable) {
      std::sort(s.begin(), s.end());
      if (s == want) return true;
    }
    return false;
  };
  CHECK(has_pair("A", "C"));
  CHECK(has_pair("B", "C"));
  CHECK(has_pair("A", "D^1"));
  CHECK(has_pair("B", "D^2"));
  CHECK_FALSE(has_pair("A", "B"));
  CHECK_FALSE(has_pair("A", "D^2"));

  // Reduction collapses it onto the correlation scenario of the extended
  // Bell DAG.
  CausalScenario reduced = reduce(inf.graph);
  CHECK(isomorphic(reduced, correlation_scenario(scenario("ext_bell_exo"))));
}

TEST_CASE("identity inflation is isomorphic to the original") {
  CausalScenario tetra = scenario("tetra");
  Inflation inf = inflate(tetra, InflationSpec{});
  CHECK(isomorphic(inf.graph, tetra,
                   {.match_observed_names = true, .match_cardinality = true}));
  // every observed subset is injectable
  CHECK(inf.injectable.size() == 15);
}

TEST_CASE("inflation wiring errors are rejected") {
  InflationSpec bad = tetra_inflation_spec();
  bad.wiring[{"D", 2, "L_BCD"}] = 7;
  CHECK_THROWS_AS(inflate(scenario("tetra"), bad), InconsistentWiring);

  // Fan-out: one source copy feeding both D copies.
  InflationSpec fan = tetra_inflation_spec();
  fan.wiring[{"D", 2, "L_ACD"}] = 1;  // L_ACD^1 already feeds D^1
  CHECK_THROWS_AS(inflate(scenario("tetra"), fan), FanoutDetected);

  InflationSpec missing = tetra_inflation_spec();
  missing.wiring.erase({"D", 2, "L_BCD"});
  CHECK_THROWS_AS(inflate(scenario("tetra"), missing), InconsistentWiring);
}

TEST_CASE("appendix-variant inflation keeps adjacent pairs injectable") {
  Inflation inf = inflate(scenario("tetra_ac_ad_bd"), tetra_acadbd_inflation_spec());
  auto has_pair = [&](const std::string& a, const std::string& b) {
    std::vector<std::string> want{a, b};
    std::sort(want.begin(), want.end());
    for (auto s : inf.injectable) {
      std::sort(s.begin(), s.end());
      if (s == want) return true;
    }
    return false;
  };
  CHECK(has_pair("A", "C"));
  CHECK(has_pair("B", "C"));
  CHECK(has_pair("A", "D^1"));
  CHECK(has_pair("B", "D^2"));
  CHECK_FALSE(has_pair("B", "D^1"));

  // The appendix reduction sequence ends at the correlation scenario of the
  // AC-intermediate extended Bell DAG.
  CausalScenario reduced = reduce(inf.graph);
  CHECK(isomorphic(reduced, correlation_scenario(scenario("ext_bell_ac"))));
}

TEST_CASE("injectable sets pass an independent isomorphism check") {
  for (const auto& [sc, spec] :
       {std::pair{std::string("tetra"), tetra_inflation_spec()},
        std::pair{std::string("tetra_ac_ad_bd"), tetra_acadbd_inflation_spec()}}) {
    CausalScenario original = scenario(sc);
    Inflation inf = inflate(original, spec);
    for (const auto& set : inf.injectable) {
      std::set<std::string> copies(set.begin(), set.end());
      std::set<std::string> origs;
      for (const auto& c : copies) origs.insert(inf.origin.at(c));
      CausalScenario sub_inf = ancestral_subgraph(inf.graph, copies);
      CausalScenario sub_orig = ancestral_subgraph(original, origs);
      // Label-erased check: latent names free, observed identities fixed by
      // renaming copies to their originals first.
      std::vector<Node> renamed;
      for (const auto& n : sub_inf.nodes()) {
        Node m = n;
        if (m.kind == NodeKind::Observed) m.name = inf.origin.at(m.name);
        renamed.push_back(m);
      }
      std::vector<std::pair<std::string, std::string>> edges;
      for (const auto& [p, c] : sub_inf.edges()) {
        auto fix = [&](int i) {
          const Node& n = sub_inf.node(i);
          return n.kind == NodeKind::Observed ? inf.origin.at(n.name) : n.name;
        };
        edges.emplace_back(fix(p), fix(c));
      }
      CausalScenario relabeled(renamed, edges);
      CHECK(isomorphic(relabeled, sub_orig,
                       {.match_observed_names = true, .match_cardinality = true}));
    }
  }
}

TEST_CASE("reduce never severs a latent connection between observed pairs") {
  for (const auto& id : {"tetra", "tetra_bc", "tetra_ac_ad_bd", "ext_bell_2il"}) {
    CausalScenario g = scenario(id);
    CausalScenario r = reduce(g);
    auto latent_connected = [](const CausalScenario& s, int a, int b) {
      for (int l : s.latents()) {
        std::set<int> desc;
        std::vector<int> stack{l};
        while (!stack.empty()) {
          int u = stack.back();
          stack.pop_back();
          if (!desc.insert(u).second) continue;
          for (int c : s.children(u)) stack.push_back(c);
        }
        if (desc.count(a) && desc.count(b)) return true;
      }
      return false;
    };
    auto obs = g.outcomes();
    for (size_t i = 0; i < obs.size(); ++i)
      for (size_t j = i + 1; j < obs.size(); ++j) {
        const std::string an = g.node(obs[i]).name;
        const std::string bn = g.node(obs[j]).name;
        if (!latent_connected(g, obs[i], obs[j])) continue;
        CHECK(latent_connected(r, r.index_of(an), r.index_of(bn)));
      }
    // observed node set preserved
    for (int o : g.outcomes()) CHECK(r.has_node(g.node(o).name));
  }
}

TEST_SUITE_END();
