#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>

#include "support.hpp"

using namespace mrsc;
using testing::exp;
using testing::program;

namespace {

// Independent oracle: expands every alternative into the full product.
std::vector<ConfGraph> bruteForce(const GraphSet& gs) {
  if (gs.isNone()) return {};
  if (const auto* f = gs.asFold()) return {ConfGraph(f->conf.config, CgFold{f->back, f->renaming})};
  const auto& b = *gs.asBuild();
  std::vector<ConfGraph> out;
  for (const auto& alt : b.alternatives) {
    std::vector<std::vector<ConfGraph>> partial{{}};
    for (const auto& child : alt.children) {
      auto options = bruteForce(child);
      std::vector<std::vector<ConfGraph>> next;
      for (const auto& prefix : partial)
        for (const auto& o : options) {
          next.push_back(prefix);
          next.back().push_back(o);
        }
      partial = std::move(next);
    }
    for (auto& children : partial) out.push_back(buildGraph(MConf{alt.step, b.config}, std::move(children)));
  }
  return out;
}

std::uint64_t oracleSize(const ConfGraph& g, SizeMeasure m) {
  std::uint64_t n = (m == SizeMeasure::SkipUnfold && g.as<CgUnfold>()) ? 0 : 1;
  for (const auto& c : g.children()) n += oracleSize(c, m);
  return n;
}

GraphSet leafSet(const std::string& v) {
  return GraphSet::build(exp(v), {GsAlternative{MdsrLeaf{exp(v)}, {}}});
}

GraphSet twoWay(const std::string& v) {
  return GraphSet::build(exp(v), {GsAlternative{MdsrLeaf{exp(v)}, {}},
                                  GsAlternative{MdsrUnfold{exp(v)}, {leafSet(v)}}});
}

}  // namespace

TEST_CASE("buildGraph keeps configurations and shapes") {
  ConfGraph x = buildGraph(MConf{MdsrLeaf{exp("x")}, exp("x")}, {});
  CHECK(x.as<CgLeaf>());
  ConfGraph c = buildGraph(MConf{MdsrCon{"P", {exp("x"), exp("x")}}, exp("P(x, x)")}, {x, x});
  REQUIRE(c.as<CgCon>());
  CHECK(c.as<CgCon>()->children.size() == 2);
  ConfGraph let = buildGraph(MConf{MdsrLet{{{"w", exp("x")}}, exp("P(w, w)")}, exp("f(x)")},
                             {buildGraph(MConf{MdsrCon{"P", {exp("w"), exp("w")}}, exp("P(w, w)")}, {x, x}), x});
  REQUIRE(let.as<CgLet>());
  CHECK(letBody(*let.as<CgLet>()).config() == exp("P(w, w)"));
  CHECK(let.as<CgLet>()->bindings[0].first == "w");
  CHECK(let.children().front().config() == exp("P(w, w)"));
}

TEST_CASE("enumeration of trivial sets") {
  CHECK(enumerateGraphs(GraphSet::none()).empty());
  CHECK(countGraphs(GraphSet::none()) == 0);
  GraphSet f = GraphSet::fold(exp("f(y)"), 2, {{"x", "y"}});
  auto gs = enumerateGraphs(f);
  REQUIRE(gs.size() == 1);
  REQUIRE(gs[0].as<CgFold>());
  CHECK(gs[0].as<CgFold>()->back == 2);
  CHECK(countGraphs(f) == 1);
}

TEST_CASE("counts multiply across children and add across alternatives") {
  GraphSet pair = GraphSet::build(
      exp("P(x, y)"), {GsAlternative{MdsrCon{"P", {exp("x"), exp("y")}}, {twoWay("x"), twoWay("y")}},
                       GsAlternative{MdsrLeaf{exp("P(x, y)")}, {}}});
  CHECK(countGraphs(pair) == 5);
  CHECK(enumerateGraphs(pair).size() == 5);
  GraphSet dead = GraphSet::build(
      exp("P(x, y)"), {GsAlternative{MdsrCon{"P", {exp("x"), exp("y")}}, {twoWay("x"), GraphSet::none()}}});
  CHECK(countGraphs(dead) == 0);
  CHECK_FALSE(firstGraph(dead));
  CHECK_FALSE(minMaxSizeGraph(dead, SizeMeasure::AllNodes, Extremum::Min));
}

TEST_CASE("graph sizes") {
  ConfGraph x = buildGraph(MConf{MdsrLeaf{exp("x")}, exp("x")}, {});
  CHECK(graphSize(x, SizeMeasure::AllNodes) == 1);
  ConfGraph c = buildGraph(MConf{MdsrCon{"P", {exp("x"), exp("x")}}, exp("P(x, x)")}, {x, x});
  CHECK(graphSize(c, SizeMeasure::AllNodes) == 3);
  ConfGraph u = buildGraph(MConf{MdsrUnfold{exp("x")}, exp("f(x)")}, {x});
  CHECK(graphSize(u, SizeMeasure::AllNodes) == 2);
  CHECK(graphSize(u, SizeMeasure::SkipUnfold) == 1);
  CHECK(graphSize(ConfGraph(exp("f(x)"), CgFold{1, {}}), SizeMeasure::SkipUnfold) == 1);
}

TEST_CASE("queries agree with exhaustive enumeration") {
  std::size_t checked = 0;
  for (const auto& name : testing::kCorpus) {
    auto src = testing::corpus(name);
    GraphSet gs = mrScp(src.program, src.target);
    GraphCount n = countGraphs(gs);
    if (n > 10'000) continue;
    CAPTURE(name);
    ++checked;
    auto all = bruteForce(gs);
    CHECK(GraphCount(all.size()) == n);
    CHECK(enumerateGraphs(gs) == all);
    CHECK(enumerateGraphs(gs, 2) == std::vector<ConfGraph>(all.begin(), all.begin() + std::min<std::size_t>(2, all.size())));
    REQUIRE_FALSE(all.empty());
    CHECK(*firstGraph(gs) == all.front());
    CHECK(*lastGraph(gs) == all.back());
    for (auto m : {SizeMeasure::AllNodes, SizeMeasure::SkipUnfold}) {
      std::uint64_t lo = UINT64_MAX, hi = 0;
      for (const auto& g : all) {
        CHECK(graphSize(g, m) == oracleSize(g, m));
        lo = std::min(lo, oracleSize(g, m));
        hi = std::max(hi, oracleSize(g, m));
      }
      for (auto [mode, want] : {std::pair{Extremum::Min, lo}, std::pair{Extremum::Max, hi}}) {
        auto r = minMaxSizeGraph(gs, m, mode);
        REQUIRE(r);
        CHECK(r->size == want);
        CHECK(countGraphs(r->pruned) == 1);
        auto picked = enumerateGraphs(r->pruned);
        REQUIRE(picked.size() == 1);
        CHECK(oracleSize(picked[0], m) == want);
        CHECK(std::find(all.begin(), all.end(), picked[0]) != all.end());
      }
    }
  }
  CHECK(checked >= 5);
}

TEST_CASE("first, last and extremum queries stay within the tree") {
  for (const auto& name : testing::kCorpus) {
    CAPTURE(name);
    auto src = testing::corpus(name);
    GraphSet gs = mrScp(src.program, src.target);
    std::size_t nodes = gs.nodeCount();
    QueryCounter a, b, c;
    REQUIRE(firstGraph(gs, &a));
    REQUIRE(lastGraph(gs, &b));
    REQUIRE(minMaxSizeGraph(gs, SizeMeasure::AllNodes, Extremum::Min, &c));
    CHECK(a.visited <= nodes);
    CHECK(b.visited <= nodes);
    CHECK(c.visited <= nodes);
  }
}

TEST_CASE("the huge KMP set is usable lazily") {
  auto src = testing::corpus("kmp");
  GraphSet gs = mrScp(src.program, src.target);
  auto start = std::chrono::steady_clock::now();
  GraphEnumerator e(gs);
  for (int i = 0; i < 1000; ++i) REQUIRE(e.next());
  CHECK(countGraphs(gs) > GraphCount(1'000'000'000));
  auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(elapsed < std::chrono::seconds(5));
}

TEST_CASE("dot output") {
  Program p = program(testing::kExpGrowth);
  GraphSet gs = mrScp(p, exp("g(Cons(A(), Nil()), z)"));
  std::string d = toDot(gs);
  CHECK(d.rfind("digraph", 0) == 0);
  CHECK(d.find("style=dashed") != std::string::npos);
  std::string g = toDot(*firstGraph(gs));
  CHECK(g.rfind("digraph", 0) == 0);
  CHECK(g.find("unfold") == std::string::npos);
  CHECK(toDot(*lastGraph(gs)).find("unfold") != std::string::npos);
}
