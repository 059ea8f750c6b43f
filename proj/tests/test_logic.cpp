#include <catch2/catch_amalgamated.hpp>

#include "cmsotw/cmsotw.hpp"

using namespace cmsotw;

TEST_CASE("parser builds the expected shapes") {
  Formula f = parse("(exists x (exists y (edge x y)))");
  REQUIRE(f->kind == Kind::ExistsFO);
  REQUIRE(f->children[0]->kind == Kind::ExistsFO);
  REQUIRE(f->children[0]->children[0]->kind == Kind::Edge);

  Formula g = parse("(existsSet 2 X (exists x (in x X)))");
  REQUIRE(g->kind == Kind::ExistsSet);
  REQUIRE(g->k == 2);
  REQUIRE(g->set_kind == SetKind::Vertex);
  REQUIRE(g->children[0]->children[0]->kind == Kind::MemV);
  REQUIRE(!g->children[0]->children[0]->is_color);

  Formula e = parse("(existsSetU X E (existsSet 1 Y V (forall x (inE x x X))))");
  REQUIRE(e->set_kind == SetKind::Edge);
  REQUIRE(e->children[0]->set_kind == SetKind::Vertex);

  Formula d = parse("(exists a (exists b (dp (a b) (b a))))");
  REQUIRE(d->children[0]->children[0]->kind == Kind::Dp);
  REQUIRE(d->children[0]->children[0]->terms.size() == 4);

  Formula c = parse("(= @c1 @c2)");
  REQUIRE(c->terms[0].is_const);
  REQUIRE(c->terms[1].name == "c2");
}

TEST_CASE("parser rejects bad input with positions") {
  REQUIRE_THROWS_AS(parse("(card 2 X)"), parse_error);          // unbound set var
  REQUIRE_THROWS_AS(parse("(exists x (= x y))"), parse_error);  // unbound FO var
  REQUIRE_THROWS_AS(parse("(existsSetU X (card 1 X))"), parse_error);   // p < 2
  REQUIRE_THROWS_AS(parse("(existsSetU X (card 99 X))"), parse_error);  // p > cap
  REQUIRE_THROWS_AS(parse("(frobnicate x)"), parse_error);
  REQUIRE_THROWS_AS(parse("(exists x (= x x)) trailing"), parse_error);
  REQUIRE_THROWS_AS(parse("(exists x (= x x)"), parse_error);

  try {
    parse("(exists x (= x zz))");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    REQUIRE(e.offset > 0);
    REQUIRE(std::string(e.what()).find("zz") != std::string::npos);
  }
}

TEST_CASE("shadowed binders are alpha-renamed at parse time") {
  Formula f = parse("(exists x (exists x (= x x)))");
  REQUIRE(f->var == "x");
  REQUIRE(f->children[0]->var != "x");
  REQUIRE(f->children[0]->children[0]->terms[0].name == f->children[0]->var);

  // a color reference is not captured by a set binder of another name
  Formula g = parse("(exists v (existsSetU X (in v perimeter)))");
  REQUIRE(g->children[0]->children[0]->is_color);
}

static std::vector<Formula> golden_corpus() {
  std::vector<std::string> texts = {
      "true",
      "(true)",
      "(exists x (= x x))",
      "(forall x (exists y (edge x y)))",
      "(exists x (not (= x @c1)))",
      "(existsSetU X (forall x (in x X)))",
      "(forallSetU X E (exists x (inE x x X)))",
      "(existsSet 0 X (exists x (in x X)))",
      "(forallSet 2 Y (existsSetU X (card 3 X)))",
      "(existsSetU X (anntw<= 1 X))",
      "(exists a (exists b (exists c (exists d (dp (a b) (c d))))))",
      "(existsSetU Z (exists a (exists b (dp+ Z (a b)))))",
      "(and (exists x (= x x)) (or true (not true)))",
      "(exists x (exists y (and (edge x y) (not (= x y)))))",
      "(existsSet 1 X (existsSet 2 Y (exists x (and (in x X) (in x Y)))))",
  };
  std::vector<Formula> out;
  for (auto& t : texts) out.push_back(parse(t));
  // pad the corpus with generated combinations
  std::vector<std::string> atoms = {"(= x y)", "(edge x y)", "(in x X)", "(card 2 X)",
                                    "(anntw<= 0 X)"};
  for (auto& a : atoms)
    for (auto& b : atoms) {
      for (auto* shape : {"(exists x (exists y (existsSetU X (and A B))))",
                          "(forall x (forall y (forallSet 1 X (or (not A) B))))",
                          "(existsSetU X (exists x (exists y (not (and A (not B))))))"}) {
        std::string t = shape;
        t.replace(t.find('A'), 1, a);
        t.replace(t.find('B'), 1, b);
        out.push_back(parse(t));
      }
    }
  return out;
}

TEST_CASE("parse after render is the identity on the golden corpus") {
  auto corpus = golden_corpus();
  REQUIRE(corpus.size() >= 90);
  for (auto& f : corpus) {
    std::string text = render(f);
    Formula back = parse(text);
    INFO(text);
    REQUIRE(equal(f, back));
    REQUIRE(render(back) == text);
  }
}

TEST_CASE("render uses the documented canonical spellings") {
  REQUIRE(render(parse("(exists x (= x x))")) == "(exists x (= x x))");
  Formula nn = f_not(f_not(parse("true")));
  REQUIRE(render(nn) == "(not (not true))");
  REQUIRE(render(parse("(exists x1 (exists y1 (exists x2 (exists y2 (dp (x1 y1) (x2 y2)))))"
                       ")")) ==
          "(exists x1 (exists y1 (exists x2 (exists y2 (dp (x1 y1) (x2 y2))))))");
}

TEST_CASE("formula length tracks parameter digits and composes") {
  Formula two = parse("(existsSet 2 X true)");
  Formula ten = parse("(existsSet 10 X true)");
  REQUIRE(formula_length(ten) > formula_length(two));

  Formula card_small = parse("(existsSetU X (card 2 X))");
  Formula card_big = parse("(existsSetU X (card 12 X))");
  REQUIRE(formula_length(card_big) > formula_length(card_small));

  // binder names do not matter
  REQUIRE(formula_length(parse("(exists y (= y y))")) ==
          formula_length(parse("(exists x (= x x))")));

  // conjunction adds a fixed overhead
  Formula a = parse("(exists x (= x x))");
  Formula b = parse("(forall z (edge z z))");
  int ca = formula_length(f_and(a, a)) - 2 * formula_length(a);
  int cb = formula_length(f_and(b, b)) - 2 * formula_length(b);
  int cab = formula_length(f_and(a, b)) - formula_length(a) - formula_length(b);
  REQUIRE(ca == cb);
  REQUIRE(ca == cab);
}

TEST_CASE("eliminate_universal_param rewrites through the dual") {
  Formula f = parse("(forallSet 1 X true)");
  Formula r = eliminate_universal_param(f);
  REQUIRE(render(r) == "(not (existsSet 1 X V (not true)))");

  Formula g = parse("(exists x (existsSetU X (in x X)))");
  REQUIRE(equal(eliminate_universal_param(g), g));

  Formula nested = parse("(forallSet 1 X (forallSet 2 Y (exists x (in x Y))))");
  Formula rn = eliminate_universal_param(nested);
  REQUIRE(render(rn) ==
          "(not (existsSet 1 X V (not (not (existsSet 2 Y V (not (exists x (in x Y))))))))");
}

TEST_CASE("to_prenex: hand examples") {
  // already prenex, set quantifiers first
  Formula p = parse("(existsSet 1 X (exists x (in x X)))");
  PrenexForm pf = to_prenex(p);
  REQUIRE(pf.prefix.size() == 2);
  REQUIRE(pf.prefix[0].kind == Kind::ExistsSet);
  REQUIRE(pf.prefix[1].kind == Kind::ExistsFO);
  REQUIRE(equal(to_formula(pf), p));

  // negation pushes through as duals
  PrenexForm n = to_prenex(parse("(not (exists x (= x x)))"));
  REQUIRE(n.prefix.size() == 1);
  REQUIRE(n.prefix[0].kind == Kind::ForallFO);
  REQUIRE(n.matrix->kind == Kind::Not);

  // existsSet 2 X not forallSet 2 Y psi  ->  [existsSet X, existsSet Y] not psi
  PrenexForm d = to_prenex(parse("(existsSet 2 X (not (forallSet 2 Y (exists x (in x Y)))))"));
  REQUIRE(d.prefix.size() == 3);
  REQUIRE(d.prefix[0].kind == Kind::ExistsSet);
  REQUIRE(d.prefix[0].var == "X");
  REQUIRE(d.prefix[1].kind == Kind::ExistsSet);
  REQUIRE(d.prefix[1].var == "Y");
  REQUIRE(d.prefix[2].kind == Kind::ForallFO);

  // set quantifiers precede FO ones inside a same-direction run
  PrenexForm s = to_prenex(parse("(exists x (existsSetU X (in x X)))"));
  REQUIRE(s.prefix[0].kind == Kind::ExistsSetU);
  REQUIRE(s.prefix[1].kind == Kind::ExistsFO);

  // matrix is quantifier-free
  std::function<bool(const Formula&)> qfree = [&](const Formula& f) {
    if (is_quantifier(f->kind)) return false;
    for (auto& c : f->children)
      if (!qfree(c)) return false;
    return true;
  };
  for (auto* text : {"(and (exists x (= x x)) (forall y (edge y y)))",
                     "(not (and (existsSetU X (card 2 X)) (not (exists x true))))",
                     "(or (forallSet 1 X (exists x (in x X))) (exists z (= z z)))"}) {
    PrenexForm q = to_prenex(parse(text));
    REQUIRE(qfree(q.matrix));
  }
}
