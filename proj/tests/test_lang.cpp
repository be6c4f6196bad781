#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace mrsc;
using testing::exp;
using testing::program;

TEST_CASE("parse pattern-matching append") {
  Program p = program(testing::kAppend);
  REQUIRE(p.defs().size() == 1);
  const auto* m = std::get_if<MatchDef>(p.find("append"));
  REQUIRE(m);
  REQUIRE(m->clauses.size() == 2);
  CHECK(m->clauses[0].pattern == Pattern{"Nil", {}});
  CHECK(m->clauses[1].pattern == Pattern{"Cons", {"x", "xs"}});
  CHECK(m->clauses[1].params == std::vector<std::string>{"ys"});
  CHECK(m->clauses[1].body == exp("Cons(x, append(xs, ys))"));
}

TEST_CASE("parse ordinary definition") {
  Program p = program("f(w) = B(w, w);");
  const auto* f = std::get_if<FunDef>(p.find("f"));
  REQUIRE(f);
  CHECK(f->params == std::vector<std::string>{"w"});
  CHECK(f->body == Exp::con("B", {Exp::var("w"), Exp::var("w")}));
}

TEST_CASE("parse empty input") {
  ParsedSource src = parseProgram("");
  CHECK(src.program.empty());
  CHECK_FALSE(src.target);
}

TEST_CASE("parse expression directive and comments") {
  ParsedSource src = parseProgram(std::string("-- list append\n") + testing::kAppend +
                                  "expression: append(append(xs, ys), zs)\n");
  REQUIRE(src.target);
  CHECK(*src.target == exp("append(append(xs, ys), zs)"));
}

TEST_CASE("nullary constructors with or without parentheses") {
  CHECK(exp("Nil") == exp("Nil()"));
  CHECK(prettyPrint(exp("Nil")) == "Nil()");
  CHECK(prettyPrint(exp("x")) == "x");
}

TEST_CASE("syntax errors report line and column") {
  try {
    parseProgram("f(x) = x;\ng(x) = ;\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS(parseProgram("f(x) = x"), ParseError);
}

TEST_CASE("well-formedness violations name the offender") {
  auto subject = [](const std::string& text) {
    try {
      parseProgram(text);
    } catch (const WellFormednessError& e) {
      return e.subject();
    }
    return std::string("<accepted>");
  };
  CHECK(subject("f(A) = A; f(A) = B;") == "f");            // overlapping
  CHECK(subject("f(A) = A; f(B) = B; g(A) = C; g(C) = A;") != "<accepted>");
  CHECK(subject("f(x) = g(x);") == "g");                    // undefined
  CHECK(subject("f(x) = x; h(y) = f(y, y);") == "f");       // arity
  CHECK(subject("F(x) = x;") == "F");                       // uppercase name
  CHECK(subject("f(x) = y;") == "f");                       // unbound
  CHECK(subject("f(x, x) = x;") == "f");                    // duplicate binder
  try {
    parseProgram("f(x) = y;");
  } catch (const WellFormednessError& e) {
    CHECK(std::string(e.what()).find("'y'") != std::string::npos);
  }
  CHECK(subject("f(A(x), y) = x; f(B, z, w) = z;") == "f");  // param count
}

TEST_CASE("exhaustiveness uses clause-head groups") {
  // g covers {A, B} but f only {A}, and A and B co-occur in g's heads.
  CHECK_THROWS_AS(parseProgram("g(A) = A; g(B) = B; f(A) = A;"), WellFormednessError);
  CHECK_NOTHROW(parseProgram("g(A) = A; g(B) = B; f(C) = A;"));
}

TEST_CASE("print/parse round trip on the corpus") {
  for (const auto& name : testing::kCorpus) {
    CAPTURE(name);
    auto src = testing::corpus(name);
    ParsedSource again = parseProgram(prettyPrint(src.program, src.target));
    CHECK(prettyPrint(again.program) == prettyPrint(src.program));
    REQUIRE(again.target);
    CHECK(*again.target == src.target);
  }
  Program sub = program(testing::kSubstring);
  CHECK(prettyPrint(program(prettyPrint(sub))) == prettyPrint(sub));
}

TEST_CASE("substitute") {
  Subst s{{"x", exp("A()")}, {"xs", exp("Nil()")}};
  CHECK(substitute(exp("Cons(x, append(xs, ys))"), s) == exp("Cons(A(), append(Nil(), ys))"));
  CHECK(substitute(exp("x"), {}) == exp("x"));
  CHECK(substitute(exp("f(x, y)"), {{"x", exp("y")}, {"y", exp("x")}}) == exp("f(y, x)"));
}

TEST_CASE("substitute composes over disjoint maps") {
  testing::TermGen gen(7);
  for (int i = 0; i < 200; ++i) {
    Exp e = gen.term(4);
    Subst s1{{"x", exp("S(A)")}};
    Subst s2{{"y", exp("P(A, A)")}};
    Subst both{{"x", exp("S(A)")}, {"y", exp("P(A, A)")}};
    CHECK(substitute(substitute(e, s1), s2) == substitute(e, both));
  }
}

TEST_CASE("free variables in first-occurrence order") {
  CHECK(freeVars(exp("g(Cons(A(), Nil()), z)")) == std::vector<std::string>{"z"});
  CHECK(freeVars(exp("x")) == std::vector<std::string>{"x"});
  CHECK(freeVars(exp("Nil()")).empty());
  CHECK(freeVars(exp("f(y, P(x, y))")) == std::vector<std::string>{"y", "x"});
}

TEST_CASE("findRenaming") {
  auto r = findRenaming(exp("f(g(xs0, y0))"), exp("f(g(xs1, y0))"));
  REQUIRE(r);
  CHECK(*r == Renaming{{"xs0", "xs1"}, {"y0", "y0"}});
  CHECK_FALSE(findRenaming(exp("x"), exp("C()")));
  CHECK_FALSE(findRenaming(exp("B(x, y)"), exp("B(u, u)")));
}

TEST_CASE("matchVariables admits non-injective maps") {
  auto r = matchVariables(exp("B(x, y)"), exp("B(u, u)"));
  REQUIRE(r);
  CHECK(*r == Renaming{{"x", "u"}, {"y", "u"}});
  CHECK_FALSE(matchVariables(exp("B(u, u)"), exp("B(x, y)")));
  CHECK_FALSE(matchVariables(exp("f(x)"), exp("f(A)")));
}

TEST_CASE("renaming properties on random terms") {
  testing::TermGen gen(11);
  for (int i = 0; i < 300; ++i) {
    Exp a = gen.term(4);
    auto self = findRenaming(a, a);
    REQUIRE(self);
    for (const auto& v : freeVars(a)) CHECK(self->at(v) == v);
    Exp c = gen.term(4);
    if (auto r = findRenaming(a, c)) CHECK(rename(a, *r) == c);
    if (auto r = matchVariables(a, c)) CHECK(rename(a, *r) == c);
    Exp shifted = rename(a, {{"x", "x9"}, {"y", "y9"}});
    auto back = findRenaming(a, shifted);
    REQUIRE(back);
    CHECK(rename(a, *back) == shifted);
  }
}

TEST_CASE("call-by-name evaluation") {
  Program app = program(testing::kAppend);
  auto r = evalCBN(app, exp("append(Cons(A(), Nil()), Cons(B(), Nil()))"), {}, 100);
  REQUIRE(r.ok());
  CHECK(r.value().toExp() == exp("Cons(A(), Cons(B(), Nil()))"));

  CHECK(evalCBN(app, exp("Nil()"), {}, 0).outOfFuel());

  Program sub = program(testing::kSubstring);
  auto s = evalCBN(sub, exp("isSublist(Cons(True(), Nil()), Cons(False(), Cons(True(), Nil())))"), {}, 1000);
  REQUIRE(s.ok());
  CHECK(s.value().toExp() == exp("True()"));
}

TEST_CASE("evaluation counts unfoldings and clause selections") {
  // append(Cons(A, Nil), ys): select Cons clause, then Nil clause; ys is a value.
  Program app = program(testing::kAppend);
  Env env{{"ys", Value{"Nil", {}}}};
  auto r = evalCBN(app, exp("append(Cons(A, Nil), ys)"), env, 100);
  REQUIRE(r.ok());
  CHECK(r.steps == 2);
  CHECK(evalCBN(app, exp("append(Cons(A, Nil), ys)"), env, 1).outOfFuel());
}

TEST_CASE("evaluation with the environment and stuck cases") {
  Program app = program(testing::kAppend);
  CHECK(evalCBN(app, exp("append(xs, Nil)"), {}, 100).stuck());
  Env env{{"xs", testing::boolList({true, false})}};
  auto r = evalCBN(app, exp("append(xs, Nil)"), env, 100);
  REQUIRE(r.ok());
  CHECK(r.value() == testing::boolList({true, false}));
}

TEST_CASE("evaluation is deterministic") {
  Program sub = program(testing::kSubstring);
  Env env{{"s", testing::boolList({true, true, false, true})}};
  Exp e = exp("isSublist(Cons(True, Cons(False, Nil)), s)");
  auto a = evalCBN(sub, e, env, 10'000);
  auto b = evalCBN(sub, e, env, 10'000);
  REQUIRE(a.ok());
  CHECK(a.value() == b.value());
  CHECK(a.steps == b.steps);
}
