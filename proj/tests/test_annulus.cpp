#include <catch2/catch_amalgamated.hpp>

#include "cmsotw/cmsotw.hpp"

using namespace cmsotw;

TEST_CASE("the annulus-grid fixture is a valid railed annulus") {
  Fixture f = annulus_grid_fixture(4, 6);
  REQUIRE(!validate_annulus(f).has_value());
  REQUIRE(f.p() == 4);
  REQUIRE(f.q() == 6);

  SECTION("two cycles sharing a vertex is a violation") {
    Fixture bad = f;
    bad.cycles[1][0] = bad.cycles[0][0];
    REQUIRE(validate_annulus(bad).has_value());
  }

  SECTION("a cycle missing a rail is a violation") {
    Fixture bad = f;
    // divert rail 0 so it skips ring 1: replace its ring-1 vertex by a
    // repeat of the ring-0 one -> not even a path, and C2 misses it
    bad.rails[0] = {bad.rails[0][0], bad.rails[0][2], bad.rails[0][3]};
    REQUIRE(validate_annulus(bad).has_value());
  }

  SECTION("too few cycles or rails") {
    REQUIRE_THROWS_AS(annulus_grid_fixture(2, 6), std::invalid_argument);
    Fixture three = annulus_grid_fixture(3, 3);
    Fixture bad = three;
    bad.cycles.pop_back();
    REQUIRE(validate_annulus(bad).has_value());
  }
}

TEST_CASE("influence is the concentric slab") {
  Fixture f = annulus_grid_fixture(6, 6);
  std::set<int> all = influence(f, 1, 6);
  REQUIRE(static_cast<int>(all.size()) == f.s.n());

  std::set<int> c3(f.cycles[2].begin(), f.cycles[2].end());
  REQUIRE(influence(f, 3, 3) == c3);

  std::set<int> a = influence(f, 2, 3), b = influence(f, 5, 6);
  for (int v : a) REQUIRE(!b.count(v));

  REQUIRE_THROWS_AS(influence(f, 0, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(influence(f, 3, 2), std::invalid_argument);
}

TEST_CASE("refinement blocks partition the cycle sequence") {
  Fixture f6 = annulus_grid_fixture(6, 3);

  SECTION("s = 1 keeps one block") {
    auto blocks = refine(f6, 1, 1);
    REQUIRE(blocks.size() == 1);
    REQUIRE(blocks[0].first_cycle == 1);
    REQUIRE(blocks[0].last_cycle == 6);
  }

  SECTION("h = 1, s = 2, p = 6 splits into two blocks of three") {
    auto blocks = refine(f6, 2, 1);
    REQUIRE(blocks.size() == 2);
    REQUIRE(blocks[0].w == std::vector<int>{0});
    REQUIRE(blocks[0].first_cycle == 1);
    REQUIRE(blocks[0].last_cycle == 3);
    REQUIRE(blocks[1].w == std::vector<int>{1});
    REQUIRE(blocks[1].first_cycle == 4);
    REQUIRE(blocks[1].last_cycle == 6);
  }

  SECTION("deep refinement covers every cycle exactly once") {
    Fixture f12 = annulus_grid_fixture(12, 3);
    auto blocks = refine(f12, 2, 2);
    REQUIRE(blocks.size() == 4);
    std::vector<int> covered(13, 0);
    for (auto& b : blocks) {
      REQUIRE(b.last_cycle - b.first_cycle + 1 == 3);
      for (int c = b.first_cycle; c <= b.last_cycle; ++c) ++covered[c];
    }
    for (int c = 1; c <= 12; ++c) REQUIRE(covered[c] == 1);
  }

  SECTION("cropped blocks are valid annuli") {
    auto blocks = refine(f6, 2, 1);
    for (auto& b : blocks) {
      Fixture sub = crop(f6, b.first_cycle, b.last_cycle);
      REQUIRE(sub.p() == 3);
      REQUIRE(!validate_annulus(sub).has_value());
    }
  }

  SECTION("divisibility is enforced") {
    REQUIRE_THROWS_AS(refine(f6, 2, 2), std::invalid_argument);  // p' would be 1.5
    REQUIRE_THROWS_AS(refine(f6, 3, 1), std::invalid_argument);  // p' would be 2
  }
}

TEST_CASE("find_buffer returns the leftmost clear strip") {
  Fixture f = annulus_grid_fixture(12, 6);

  auto clear = find_buffer(f, {}, 3);
  REQUIRE(clear.has_value());
  REQUIRE(*clear == std::make_pair(1, 3));

  std::set<int> all;
  for (int v = 0; v < f.s.n(); ++v) all.insert(v);
  REQUIRE(!find_buffer(f, all, 3).has_value());

  std::set<int> c1(f.cycles[0].begin(), f.cycles[0].end());
  auto r = find_buffer(f, c1, 3);
  REQUIRE(r.has_value());
  REQUIRE(*r == std::make_pair(2, 4));
  // post-hoc soundness and leftmost-completeness
  std::set<int> infl = influence(f, r->first, r->second);
  for (int v : c1) REQUIRE(!infl.count(v));
  for (int i = 1; i < r->first; ++i) {
    std::set<int> earlier = influence(f, i, i + 2);
    bool blocked = false;
    for (int v : c1)
      if (earlier.count(v)) blocked = true;
    REQUIRE(blocked);
  }

  REQUIRE_THROWS_AS(find_buffer(f, {}, 13), std::invalid_argument);
}

TEST_CASE("find_linkage realizes patterns and validates") {
  // two disjoint edges
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  auto l = find_linkage(g, {{0, 1}, {2, 3}});
  REQUIRE(l.has_value());
  REQUIRE(!validate_linkage(g, *l).has_value());
  REQUIRE(l->pattern() == std::set<std::pair<int, int>>{{0, 1}, {2, 3}});

  // disconnected pattern
  REQUIRE(!find_linkage(g, {{0, 2}}).has_value());

  // opposite corner pairs in the 3x3 grid: top edge pair and bottom edge pair
  Structure g3 = generate_grid(3);
  auto corners = find_linkage(g3.g, {{0, 2}, {6, 8}});
  REQUIRE(corners.has_value());
  REQUIRE(!validate_linkage(g3.g, *corners).has_value());
  // the crossing diagonals are impossible in the planar grid
  REQUIRE(!find_linkage(g3.g, {{0, 8}, {2, 6}}).has_value());

  // forbidden vertices are avoided
  Graph c4 = generate_cycle(4).g;
  auto around = find_linkage(c4, {{0, 2}}, {1});
  REQUIRE(around.has_value());
  REQUIRE(around->paths[0] == std::vector<int>{0, 3, 2});

  REQUIRE_THROWS_AS(find_linkage(g, {{0, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(find_linkage(g, {{0, 1}, {1, 2}}), std::invalid_argument);
  REQUIRE_THROWS_AS(find_linkage(c4, {{0, 1}}, {0}), std::invalid_argument);
}

TEST_CASE("linkage equivalence is pattern equality") {
  Graph c6 = generate_cycle(6).g;
  Linkage a{{{0, 1, 2, 3}}};
  Linkage b{{{3, 4, 5, 0}}};  // other way around the cycle, same endpoints
  Linkage c{{{1, 2}}};
  REQUIRE(linkage_equivalent(a, a));
  REQUIRE(linkage_equivalent(a, b));
  REQUIRE(!linkage_equivalent(a, c));
  REQUIRE(!validate_linkage(c6, a).has_value());
  REQUIRE(!validate_linkage(c6, b).has_value());
}

TEST_CASE("linkage validation rejects malformed path sets") {
  Graph c6 = generate_cycle(6).g;
  REQUIRE(validate_linkage(c6, {{{0}}}).has_value());           // no edge
  REQUIRE(validate_linkage(c6, {{{0, 2}}}).has_value());        // not a path
  REQUIRE(validate_linkage(c6, {{{0, 1}, {1, 2}}}).has_value());  // overlap
}

TEST_CASE("fixture files round trip") {
  Fixture f = annulus_grid_fixture(4, 6);
  json j = fixture_to_json(f);
  Fixture back = fixture_from_json(j);
  REQUIRE(back.s.g == f.s.g);
  REQUIRE(back.cycles == f.cycles);
  REQUIRE(back.rails == f.rails);
  REQUIRE(back.ring == f.ring);
  REQUIRE(fixture_to_json(back) == j);
}
