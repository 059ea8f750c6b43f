#include <catch2/catch_amalgamated.hpp>

#include "cmsotw/cmsotw.hpp"
#include "oracles.hpp"

using namespace cmsotw;

static Structure wrap(const Graph& g) {
  Structure s;
  s.g = g;
  for (int i = 0; i < g.n(); ++i) s.vertex_names.push_back(std::to_string(i));
  return s;
}

TEST_CASE("evaluate: basic sentences") {
  Structure c4 = generate_cycle(4);
  REQUIRE(evaluate(c4, parse("(exists x (exists y (edge x y)))")));
  REQUIRE(!evaluate(c4, parse("(exists x (edge x x))")));

  Structure k3 = generate_clique(3);
  REQUIRE(evaluate(k3, parse("(existsSet 0 X (exists x (in x X)))")));
  REQUIRE(evaluate(k3, parse("(forallSet 1 X true)")));
  REQUIRE(evaluate(k3, parse("(not (existsSet 1 X (not true)))")));

  // colors and constants
  Structure g3 = generate_grid(3);
  g3.voc.constants.push_back("center");
  g3.constants["center"] = g3.index_of("4");
  REQUIRE(evaluate(g3, parse("(not (in @center perimeter))")));
  REQUIRE(evaluate(g3, parse("(forall x (or (= x @center) (in x perimeter)))")));
}

TEST_CASE("evaluate: edge-set quantification with endpoint annotation") {
  Structure p3 = generate_path(3);
  // some nonempty edge set exists
  REQUIRE(evaluate(p3, parse("(existsSetU X E (exists x (exists y (inE x y X))))")));
  // an edge set of even size: the empty set and the full set qualify
  REQUIRE(evaluate(p3, parse("(existsSetU X E (card 2 X))")));
  // every single-edge set has endpoint annotation of anntw 1
  REQUIRE(evaluate(generate_clique(4),
                   parse("(existsSet 1 X E (exists x (exists y (inE x y X))))")));
  // with parameter 0 no nonempty edge set passes the filter on K4
  REQUIRE(!evaluate(generate_clique(4),
                    parse("(existsSet 0 X E (exists x (exists y (inE x y X))))")));
}

static std::vector<Formula> matrix_family() {
  std::vector<Formula> out;
  for (auto* t : {
           "(exists x (in x X))",
           "(forall x (in x X))",
           "(card 2 X)",
           "(and (card 2 X) (exists x (in x X)))",
           "(exists x (exists y (and (in x X) (and (in y X) (edge x y)))))",
           "(not (exists x (in x X)))",
           "(anntw<= 1 X)",
           "true",
       })
    out.push_back(parse(t, {.free_set = {{"X", SetKind::Vertex}}}));
  return out;
}

TEST_CASE("quantifier duality holds exhaustively on tiny graphs") {
  auto family = matrix_family();
  for (auto& g : oracle::all_graphs(3)) {
    Structure s = wrap(g);
    for (auto& body : family)
      for (int k = 0; k <= 2; ++k) {
        Formula fa = f_forall_set(k, "X", body);
        Formula fb = f_not(f_exists_set(k, "X", f_not(body)));
        REQUIRE(evaluate(s, fa) == evaluate(s, fb));
      }
  }
}

TEST_CASE("existsSet is monotone in k and unbounded at k >= tw") {
  auto family = matrix_family();
  for (auto& g : oracle::all_graphs(3)) {
    Structure s = wrap(g);
    int tw = treewidth_exact(g).width;
    for (auto& body : family) {
      std::vector<bool> at_k;
      for (int k = 0; k <= 3; ++k) at_k.push_back(evaluate(s, f_exists_set(k, "X", body)));
      for (int k = 0; k < 3; ++k) REQUIRE((!at_k[k] || at_k[k + 1]));
      bool unbounded = evaluate(s, f_exists_setu("X", body));
      for (int k = tw; k <= 3; ++k) REQUIRE(at_k[k] == unbounded);
    }
  }
}

TEST_CASE("check_dp: hand cases") {
  Structure p4 = generate_path(4);
  REQUIRE(check_dp(p4, {{0, 1}, {2, 3}}));
  REQUIRE(!check_dp(p4, {{0, 2}, {1, 3}}));
  REQUIRE(check_dp(p4, {{2, 2}}));

  // star: every leaf-to-leaf path passes the center
  Structure star;
  star.g = Graph(4);
  star.vertex_names = {"c", "x", "y", "z"};
  for (int i = 1; i < 4; ++i) star.g.add_edge(0, i);
  REQUIRE(!check_dp(star, {{1, 2}, {3, 0}}));
  REQUIRE(check_dp(star, {{1, 2}}));

  // shared terminals are never satisfiable
  REQUIRE(!check_dp(p4, {{0, 1}, {1, 2}}));
  REQUIRE(!check_dp(p4, {{0, 0}, {0, 1}}));

  // witness paths are real disjoint paths in pair order
  std::vector<std::vector<int>> w;
  Structure c6 = generate_cycle(6);
  REQUIRE(check_dp(c6, {{0, 2}, {3, 5}}, &w));
  REQUIRE(w.size() == 2);
  REQUIRE(w[0].front() == 0);
  REQUIRE(w[0].back() == 2);
  REQUIRE(w[1].front() == 3);
  REQUIRE(w[1].back() == 5);
  std::set<int> seen;
  for (auto& path : w)
    for (int v : path) REQUIRE(seen.insert(v).second);
}

TEST_CASE("check_dp agrees with the path-enumeration oracle") {
  std::mt19937 rng(21);
  int checked = 0;
  for (auto& g : oracle::all_graphs(4)) {
    Structure s = wrap(g);
    for (int t = 0; t < 4; ++t) {
      int k = 1 + static_cast<int>(rng() % 2);
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < k; ++i)
        pairs.emplace_back(rng() % 4, rng() % 4);
      REQUIRE(check_dp(s, pairs) == oracle::dp(g, pairs));
      // invariance under permutation and endpoint swap
      auto shuffled = pairs;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (auto& pr : shuffled)
        if (rng() % 2) std::swap(pr.first, pr.second);
      REQUIRE(check_dp(s, shuffled) == check_dp(s, pairs));
      ++checked;
    }
  }
  REQUIRE(checked >= 250);
}

TEST_CASE("check_dp_plus: avoidance semantics") {
  Structure p3 = generate_path(3);
  REQUIRE(!check_dp_plus(p3, {1}, {{0, 2}}));
  REQUIRE(check_dp_plus(p3, {}, {{0, 2}}) == check_dp(p3, {{0, 2}}));

  Structure c4 = generate_cycle(4);
  REQUIRE(check_dp_plus(c4, {1}, {{0, 2}}));

  REQUIRE_THROWS_AS(check_dp_plus(p3, {0}, {{0, 2}}), std::invalid_argument);

  // inside a formula a terminal in Z simply falsifies the atom
  Structure p3b = generate_path(3);
  Formula f = parse("(existsSetU Z (and (exists z (in z Z)) (exists a (exists b (dp+ Z (a b))))))");
  REQUIRE(evaluate(p3b, f));
}

TEST_CASE("evaluate_query returns the first canonical witness") {
  Structure p3 = generate_path(3);
  Formula deg2 = parse(
      "(exists y (exists z (and (not (= y z)) (and (edge x y) (edge x z)))))",
      {.free_fo = {"x"}});
  auto w = evaluate_query(p3, deg2, {"x"});
  REQUIRE(w.has_value());
  REQUIRE(w->fo.at("x") == 1);

  auto none = evaluate_query(p3, parse("(not (= x x))", {.free_fo = {"x"}}), {"x"});
  REQUIRE(!none.has_value());

  Structure k3 = generate_clique(3);
  Formula evenset = parse("(and (card 2 X) (exists v (in v X)))",
                          {.free_set = {{"X", SetKind::Vertex}}});
  auto ws = evaluate_query(k3, evenset, {}, {{"X", SetKind::Vertex}});
  REQUIRE(ws.has_value());
  REQUIRE(ws->sets.at("X").val == std::set<int>{0, 1});
}

TEST_CASE("set quantification cap raises an explicit error") {
  Structure big = generate_path(13);
  REQUIRE_THROWS_AS(evaluate(big, parse("(existsSetU X (card 2 X))")), cap_error);
  REQUIRE(evaluate(big, parse("(existsSetU X (card 2 X))"), {}, {.max_subset_n = 13}));
  REQUIRE(evaluate(big, parse("(exists x (= x x))")));  // FO-only is unaffected
}
