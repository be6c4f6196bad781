#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace mrsc;
using testing::exp;
using testing::program;

namespace {

const Program& expGrowth() {
  static const Program p = program(testing::kExpGrowth);
  return p;
}

std::vector<Exp> configsOf(const GraphSet& gs, std::size_t limit) {
  std::vector<Exp> out;
  std::vector<GraphSet> todo{gs};
  while (!todo.empty() && out.size() < limit) {
    GraphSet g = todo.back();
    todo.pop_back();
    if (const auto* b = g.asBuild()) {
      out.push_back(b->config);
      for (const auto& alt : b->alternatives)
        for (const auto& c : alt.children) todo.push_back(c);
    }
  }
  return out;
}

// Rebuilds an expression equivalent to `e` from one driving alternative,
// picking the case branch that `env` selects.
std::optional<std::pair<Exp, Env>> reconstruct(const MultiDriveStepResult& r, const Env& env) {
  if (const auto* l = std::get_if<MdsrLeaf>(&r)) return std::pair{l->var, env};
  if (const auto* c = std::get_if<MdsrCon>(&r)) return std::pair{Exp::con(c->con, c->args), env};
  if (const auto* u = std::get_if<MdsrUnfold>(&r)) return std::pair{u->exp, env};
  if (const auto* l = std::get_if<MdsrLet>(&r)) {
    Subst s;
    for (const auto& [v, e] : l->bindings) s.emplace(v, e);
    return std::pair{substitute(l->body, s), env};
  }
  const auto& k = std::get<MdsrCases>(r);
  const Value& v = env.at(k.var);
  for (const auto& [pat, body] : k.branches) {
    if (pat.con != v.con) continue;
    Env extended = env;
    for (std::size_t i = 0; i < pat.vars.size(); ++i) extended[pat.vars[i]] = v.args[i];
    return std::pair{body, extended};
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("single-step driving") {
  const Program& p = expGrowth();
  FreshSource f1(p, exp("x"));
  CHECK(std::holds_alternative<DsrNone>(driveStep(p, exp("x"), f1)));

  Exp c = exp("f(g(xs0, y0))");
  FreshSource f2(p, c);
  CHECK(driveStep(p, c, f2) == DriveStepResult{DsrUnfold{exp("B(g(xs0, y0), g(xs0, y0))")}});

  Exp g = exp("g(xs0, y0)");
  FreshSource f3(p, g);
  DriveStepResult want = DsrCases{"xs0",
                                  {{Pattern{"Nil", {}}, exp("y0")},
                                   {Pattern{"Cons", {"x0", "xs1"}}, exp("f(g(xs1, y0))")}}};
  CHECK(driveStep(p, g, f3) == want);
}

TEST_CASE("positive information propagation") {
  const Program& p = expGrowth();
  const auto& g = std::get<MatchDef>(*p.find("g"));
  FreshSource fresh(p, exp("g(xs0, y0)"));
  std::vector<Exp> args{exp("y0")};
  CHECK(propagate("xs0", g.clauses[0], args, fresh) == Branch{Pattern{"Nil", {}}, exp("y0")});
  CHECK(propagate("xs0", g.clauses[1], args, fresh) ==
        Branch{Pattern{"Cons", {"x0", "xs1"}}, exp("f(g(xs1, y0))")});
}

TEST_CASE("propagation reaches other arguments") {
  Program p = program("g(C(v), a) = P(v, a); g(D, a) = a; h(C(u)) = u; h(D) = D;");
  Exp e = exp("g(x, h(x))");
  FreshSource fresh(p, e);
  DriveStepResult want = DsrCases{"x",
                                  {{Pattern{"C", {"v0"}}, exp("P(v0, h(C(v0)))")},
                                   {Pattern{"D", {}}, exp("h(D)")}}};
  CHECK(driveStep(p, e, fresh) == want);
}

TEST_CASE("multi-result driving") {
  const Program& p = expGrowth();
  Exp root = exp("g(Cons(A(), Nil()), z)");
  FreshSource f1(p, root);
  std::vector<MultiDriveStepResult> want{
      MdsrLet{{{"x0", exp("A()")}, {"xs0", exp("Nil()")}, {"y0", exp("z")}}, exp("f(g(xs0, y0))")},
      MdsrUnfold{exp("f(g(Nil(), z))")}};
  CHECK(multiDriveSteps(p, root, f1) == want);

  Exp c = exp("f(g(xs0, y0))");
  FreshSource f2(p, c);
  std::vector<MultiDriveStepResult> want2{
      MdsrLet{{{"w0", exp("g(xs0, y0)")}}, exp("B(w0, w0)")},
      MdsrUnfold{exp("B(g(xs0, y0), g(xs0, y0))")}};
  CHECK(multiDriveSteps(p, c, f2) == want2);

  FreshSource f3(p, exp("x"));
  CHECK(multiDriveSteps(p, exp("x"), f3) == std::vector<MultiDriveStepResult>{MdsrLeaf{exp("x")}});
}

TEST_CASE("nested call: full generalization first, then the spliced inner results") {
  Program p = program(testing::kAppend);
  Exp e = exp("append(append(xs, ys), zs)");
  FreshSource fresh(p, e);
  auto rs = multiDriveSteps(p, e, fresh);
  REQUIRE(rs.size() == 2);
  const auto* let = std::get_if<MdsrLet>(&rs[0]);
  REQUIRE(let);
  REQUIRE(let->bindings.size() == 2);
  CHECK(let->bindings[0].second == exp("append(xs, ys)"));
  CHECK(let->bindings[1].second == exp("zs"));
  CHECK(let->body == Exp::fun("append", {Exp::var(let->bindings[0].first),
                                         Exp::var(let->bindings[1].first)}));
  const auto* cases = std::get_if<MdsrCases>(&rs[1]);
  REQUIRE(cases);
  CHECK(cases->var == "xs");
  REQUIRE(cases->branches.size() == 2);
  CHECK(cases->branches[0].second == exp("append(ys, zs)"));
}

TEST_CASE("mdsrMap splices into the context") {
  ExpContext ctx(exp("g(e, ys)"), {0});
  auto out = mdsrMap(ctx, {MdsrUnfold{exp("h(x)")}});
  CHECK(out == std::vector<MultiDriveStepResult>{MdsrUnfold{exp("g(h(x), ys)")}});

  ExpContext hd(exp("matchHdEq(hole, pp, Cons(s, ss), op, os)"), {0});
  auto spliced = mdsrMap(hd, {MdsrCases{"s", {{Pattern{"True", {}}, exp("b")}}}});
  CHECK(spliced == std::vector<MultiDriveStepResult>{MdsrCases{
                       "s", {{Pattern{"True", {}}, exp("matchHdEq(b, pp, Cons(True(), ss), op, os)")}}}});

  auto let = mdsrMap(ctx, {MdsrLet{{{"x0", exp("e0")}}, exp("body")}});
  CHECK(let == std::vector<MultiDriveStepResult>{MdsrLet{{{"x0", exp("e0")}}, exp("g(body, ys)")}});

  CHECK_THROWS_AS(mdsrMap(ctx, {MdsrLeaf{exp("x")}}), InternalError);
  CHECK_THROWS_AS(mdsrMap(ctx, {MdsrCon{"A", {}}}), InternalError);
}

TEST_CASE("mdsrSubExps") {
  CHECK(mdsrSubExps(MdsrLeaf{exp("x")}).empty());
  CHECK(mdsrSubExps(MdsrLet{{{"w0", exp("g(xs0, y0)")}}, exp("B(w0, w0)")}) ==
        std::vector<Exp>{exp("B(w0, w0)"), exp("g(xs0, y0)")});
  CHECK(mdsrSubExps(MdsrCon{"Cons", {exp("A()"), exp("Nil()")}}) ==
        std::vector<Exp>{exp("A()"), exp("Nil()")});
}

TEST_CASE("expression contexts") {
  ExpContext ctx(exp("f(P(A, hole), y)"), {0, 1});
  Exp filled = ctx.fill(exp("g(x, x)"));
  CHECK(filled == exp("f(P(A, g(x, x)), y)"));
  CHECK(ctx.holeContents(filled) == exp("g(x, x)"));
  CHECK(ctx.substituted({{"y", exp("B")}}).fill(exp("y")) == exp("f(P(A, y), B)"));
}

TEST_CASE("fresh names avoid program and expression variables") {
  Program p = program("f(x0, x) = x;");
  FreshSource fresh(p, exp("f(x1, x)"));
  std::set<std::string> seen;
  for (int i = 0; i < 50; ++i) {
    std::string n = fresh.fresh("x");
    CHECK(n != "x0");
    CHECK(n != "x1");
    CHECK(seen.insert(n).second);
  }
  CHECK(fresh.fresh("xs12").rfind("xs", 0) == 0);
}

TEST_CASE("structural properties over corpus configurations") {
  for (const auto& name : testing::kCorpus) {
    CAPTURE(name);
    auto src = testing::corpus(name);
    auto configs = configsOf(mrScp(src.program, src.target), 400);
    auto programVarSet = programVars(src.program);
    for (const auto& c : configs) {
      FreshSource fresh(src.program, c);
      FreshSource single = fresh;
      auto rs = multiDriveSteps(src.program, c, fresh);
      REQUIRE_FALSE(rs.empty());
      auto free = freeVars(c);

      // Generalization precedes driving.
      for (std::size_t i = 0; i < rs.size(); ++i)
        if (std::holds_alternative<MdsrUnfold>(rs[i])) {
          bool letBefore = false;
          for (std::size_t j = 0; j < i; ++j) letBefore |= std::holds_alternative<MdsrLet>(rs[j]);
          CHECK(letBefore);
        }

      // Binders are fresh.
      for (const auto& r : rs) {
        std::vector<std::string> binders;
        if (const auto* l = std::get_if<MdsrLet>(&r))
          for (const auto& b : l->bindings) binders.push_back(b.first);
        if (const auto* k = std::get_if<MdsrCases>(&r))
          for (const auto& b : k->branches) binders.insert(binders.end(), b.first.vars.begin(), b.first.vars.end());
        for (const auto& b : binders) {
          CHECK(std::find(free.begin(), free.end(), b) == free.end());
          CHECK(std::find(programVarSet.begin(), programVarSet.end(), b) == programVarSet.end());
        }
        std::set<std::string> distinct(binders.begin(), binders.end());
        CHECK(distinct.size() == binders.size());
      }

      // The last alternative agrees with single-step driving.
      DriveStepResult d = driveStep(src.program, c, single);
      const auto& last = rs.back();
      if (std::holds_alternative<DsrNone>(d)) CHECK(std::holds_alternative<MdsrLeaf>(last));
      if (const auto* con = std::get_if<DsrCon>(&d)) CHECK(last == MultiDriveStepResult{MdsrCon{con->con, con->args}});
      if (const auto* u = std::get_if<DsrUnfold>(&d)) {
        if (!(c.isFun() && c.arg(0).isFun() && std::get_if<MatchDef>(src.program.find(c.name()))))
          CHECK(last == MultiDriveStepResult{MdsrUnfold{u->exp}});
      }
      if (const auto* k = std::get_if<DsrCases>(&d)) {
        if (c.arg(0).isVar()) CHECK(last == MultiDriveStepResult{MdsrCases{k->var, k->branches}});
      }
    }
  }
}

TEST_CASE("every alternative preserves meaning") {
  std::mt19937_64 rng(5);
  for (const auto& name : testing::kCorpus) {
    CAPTURE(name);
    auto src = testing::corpus(name);
    auto configs = configsOf(mrScp(src.program, src.target), 60);
    for (const auto& c : configs) {
      CAPTURE(prettyPrint(c));
      FreshSource fresh(src.program, c);
      auto rs = multiDriveSteps(src.program, c, fresh);
      ValueGenerator gen(src.program, c);
      for (int trial = 0; trial < 5; ++trial) {
        Env env = gen.sample(rng);
        EvalResult want = evalCBN(src.program, c, env, 20'000);
        if (!want.ok()) continue;
        for (const auto& r : rs) {
          auto re = reconstruct(r, env);
          REQUIRE(re);
          EvalResult got = evalCBN(src.program, re->first, re->second, 20'000);
          if (got.outOfFuel()) continue;
          REQUIRE(got.ok());
          CHECK(got.value() == want.value());
        }
      }
    }
  }
}
