#include "mrsc/graphset.hpp"

namespace mrsc {

GraphSet::GraphSet() : node_(std::make_shared<const Node>(GsNone{})) {}

GraphSet GraphSet::fold(Exp config, std::size_t back, Renaming renaming) {
  return GraphSet(std::make_shared<const Node>(
      GsFold{MConf{MdsrLeaf{config}, config}, back, std::move(renaming)}));
}

GraphSet GraphSet::build(Exp config, std::vector<GsAlternative> alternatives) {
  return GraphSet(std::make_shared<const Node>(GsBuild{std::move(config), std::move(alternatives)}));
}

std::size_t GraphSet::nodeCount() const {
  std::size_t n = 1;
  if (const auto* b = asBuild())
    for (const auto& alt : b->alternatives)
      for (const auto& c : alt.children) n += c.nodeCount();
  return n;
}

bool operator==(const GraphSet& a, const GraphSet& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->index() != b.node_->index()) return false;
  if (a.isNone()) return true;
  if (const auto* fa = a.asFold()) {
    const auto* fb = b.asFold();
    return fa->conf.config == fb->conf.config && fa->back == fb->back &&
           fa->renaming == fb->renaming;
  }
  const auto* ba = a.asBuild();
  const auto* bb = b.asBuild();
  if (ba->config != bb->config || ba->alternatives.size() != bb->alternatives.size()) return false;
  for (std::size_t i = 0; i < ba->alternatives.size(); ++i) {
    const auto& x = ba->alternatives[i];
    const auto& y = bb->alternatives[i];
    if (x.step != y.step || x.children != y.children) return false;
  }
  return true;
}

ConfGraph::ConfGraph(Exp config, Shape shape)
    : node_(std::make_shared<const Node>(Node{std::move(config), std::move(shape)})) {}

const ConfGraph& unfoldChild(const CgUnfold& u) { return u.child.front(); }
const ConfGraph& letBody(const CgLet& l) { return l.body.front(); }

std::vector<ConfGraph> ConfGraph::children() const {
  return std::visit(
      [](const auto& s) -> std::vector<ConfGraph> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CgCon>) {
          return s.children;
        } else if constexpr (std::is_same_v<T, CgUnfold>) {
          return s.child;
        } else if constexpr (std::is_same_v<T, CgCases>) {
          std::vector<ConfGraph> out;
          for (const auto& b : s.branches) out.push_back(b.second);
          return out;
        } else if constexpr (std::is_same_v<T, CgLet>) {
          std::vector<ConfGraph> out = s.body;
          for (const auto& b : s.bindings) out.push_back(b.second);
          return out;
        } else {
          return {};
        }
      },
      shape());
}

bool operator==(const ConfGraph& a, const ConfGraph& b) {
  if (a.node_ == b.node_) return true;
  if (a.config() != b.config() || a.shape().index() != b.shape().index()) return false;
  if (const auto* l = a.as<CgLeaf>()) return l->var == b.as<CgLeaf>()->var;
  if (const auto* f = a.as<CgFold>()) {
    const auto* g = b.as<CgFold>();
    return f->back == g->back && f->renaming == g->renaming;
  }
  if (const auto* c = a.as<CgCon>()) {
    if (c->con != b.as<CgCon>()->con) return false;
  } else if (const auto* cs = a.as<CgCases>()) {
    const auto* ds = b.as<CgCases>();
    if (cs->var != ds->var || cs->branches.size() != ds->branches.size()) return false;
    for (std::size_t i = 0; i < cs->branches.size(); ++i)
      if (cs->branches[i].first != ds->branches[i].first) return false;
  } else if (const auto* l = a.as<CgLet>()) {
    const auto* m = b.as<CgLet>();
    if (l->bindings.size() != m->bindings.size()) return false;
    for (std::size_t i = 0; i < l->bindings.size(); ++i)
      if (l->bindings[i].first != m->bindings[i].first) return false;
  }
  return a.children() == b.children();
}

ConfGraph buildGraph(const MConf& conf, std::vector<ConfGraph> children) {
  std::size_t expected = mdsrSubExps(conf.step).size();
  if (children.size() != expected)
    throw InternalError(std::string("buildGraph: ") + stepKindName(conf.step) + " step needs " +
                        std::to_string(expected) + " children, got " +
                        std::to_string(children.size()));
  return std::visit(
      [&](const auto& s) -> ConfGraph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MdsrLeaf>) {
          return ConfGraph(conf.config, CgLeaf{s.var});
        } else if constexpr (std::is_same_v<T, MdsrCon>) {
          return ConfGraph(conf.config, CgCon{s.con, std::move(children)});
        } else if constexpr (std::is_same_v<T, MdsrUnfold>) {
          return ConfGraph(conf.config, CgUnfold{std::move(children)});
        } else if constexpr (std::is_same_v<T, MdsrCases>) {
          CgCases cases{s.var, {}};
          for (std::size_t i = 0; i < s.branches.size(); ++i)
            cases.branches.emplace_back(s.branches[i].first, std::move(children[i]));
          return ConfGraph(conf.config, std::move(cases));
        } else {
          CgLet let{{}, {std::move(children[0])}};
          for (std::size_t i = 0; i < s.bindings.size(); ++i)
            let.bindings.emplace_back(s.bindings[i].first, std::move(children[i + 1]));
          return ConfGraph(conf.config, std::move(let));
        }
      },
      conf.step);
}

// ---------------------------------------------------------------------------
// Enumeration

struct GraphEnumerator::State {
  GraphSet gs;
  bool foldEmitted = false;
  std::size_t alt = 0;
  bool altStarted = false;
  std::vector<GraphEnumerator> kids;
  std::vector<ConfGraph> current;
};

GraphEnumerator::GraphEnumerator(GraphSet gs) : state_(std::make_unique<State>()) {
  state_->gs = std::move(gs);
}
GraphEnumerator::~GraphEnumerator() = default;
GraphEnumerator::GraphEnumerator(GraphEnumerator&&) noexcept = default;
GraphEnumerator& GraphEnumerator::operator=(GraphEnumerator&&) noexcept = default;

std::optional<ConfGraph> GraphEnumerator::next() {
  State& st = *state_;
  if (st.gs.isNone()) return std::nullopt;
  if (const auto* f = st.gs.asFold()) {
    if (st.foldEmitted) return std::nullopt;
    st.foldEmitted = true;
    return ConfGraph(f->conf.config, CgFold{f->back, f->renaming});
  }
  const GsBuild& b = *st.gs.asBuild();
  while (st.alt < b.alternatives.size()) {
    const GsAlternative& alt = b.alternatives[st.alt];
    MConf conf{alt.step, b.config};
    if (!st.altStarted) {
      st.kids.clear();
      st.current.clear();
      bool empty = false;
      for (const auto& child : alt.children) {
        st.kids.emplace_back(child);
        auto g = st.kids.back().next();
        if (!g) {
          empty = true;
          break;
        }
        st.current.push_back(std::move(*g));
      }
      if (empty) {
        ++st.alt;
        continue;
      }
      st.altStarted = true;
      return buildGraph(conf, st.current);
    }
    for (std::size_t i = st.kids.size(); i-- > 0;) {
      auto g = st.kids[i].next();
      if (!g) continue;
      st.current[i] = std::move(*g);
      for (std::size_t j = i + 1; j < st.kids.size(); ++j) {
        st.kids[j] = GraphEnumerator(alt.children[j]);
        st.current[j] = *st.kids[j].next();
      }
      return buildGraph(conf, st.current);
    }
    st.altStarted = false;
    ++st.alt;
  }
  return std::nullopt;
}

std::vector<ConfGraph> enumerateGraphs(const GraphSet& gs, std::size_t limit) {
  std::vector<ConfGraph> out;
  GraphEnumerator en(gs);
  while (out.size() < limit) {
    auto g = en.next();
    if (!g) break;
    out.push_back(std::move(*g));
  }
  return out;
}

GraphCount countGraphs(const GraphSet& gs) {
  if (gs.isNone()) return 0;
  if (gs.asFold()) return 1;
  GraphCount total = 0;
  for (const auto& alt : gs.asBuild()->alternatives) {
    GraphCount prod = 1;
    for (const auto& c : alt.children) {
      prod *= countGraphs(c);
      if (prod == 0) break;
    }
    total += prod;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Size queries

namespace {

std::uint64_t stepWeight(const MultiDriveStepResult& step, SizeMeasure m) {
  return m == SizeMeasure::SkipUnfold && std::holds_alternative<MdsrUnfold>(step) ? 0 : 1;
}

std::optional<ConfGraph> extremeGraph(const GraphSet& gs, bool first, QueryCounter* counter) {
  if (counter) ++counter->visited;
  if (gs.isNone()) return std::nullopt;
  if (const auto* f = gs.asFold()) return ConfGraph(f->conf.config, CgFold{f->back, f->renaming});
  const auto& alts = gs.asBuild()->alternatives;
  for (std::size_t k = 0; k < alts.size(); ++k) {
    const GsAlternative& alt = alts[first ? k : alts.size() - 1 - k];
    std::vector<ConfGraph> children;
    bool complete = true;
    for (const auto& c : alt.children) {
      auto g = extremeGraph(c, first, counter);
      if (!g) {
        complete = false;
        break;
      }
      children.push_back(std::move(*g));
    }
    if (complete) return buildGraph(MConf{alt.step, gs.asBuild()->config}, std::move(children));
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t graphSize(const ConfGraph& g, SizeMeasure m) {
  std::uint64_t n = (m == SizeMeasure::SkipUnfold && g.as<CgUnfold>()) ? 0 : 1;
  for (const auto& c : g.children()) n += graphSize(c, m);
  return n;
}

std::optional<ConfGraph> firstGraph(const GraphSet& gs, QueryCounter* counter) {
  return extremeGraph(gs, true, counter);
}

std::optional<ConfGraph> lastGraph(const GraphSet& gs, QueryCounter* counter) {
  return extremeGraph(gs, false, counter);
}

std::optional<SizedGraphSet> minMaxSizeGraph(const GraphSet& gs, SizeMeasure m, Extremum mode,
                                             QueryCounter* counter) {
  if (counter) ++counter->visited;
  if (gs.isNone()) return std::nullopt;
  if (gs.asFold()) return SizedGraphSet{1, gs};
  const GsBuild& b = *gs.asBuild();
  std::optional<SizedGraphSet> best;
  for (const auto& alt : b.alternatives) {
    std::uint64_t total = stepWeight(alt.step, m);
    GsAlternative kept{alt.step, {}};
    bool complete = true;
    for (const auto& c : alt.children) {
      auto sub = minMaxSizeGraph(c, m, mode, counter);
      if (!sub) {
        complete = false;
        break;
      }
      total += sub->size;
      kept.children.push_back(std::move(sub->pruned));
    }
    if (!complete) continue;
    bool better = !best || (mode == Extremum::Min ? total < best->size : total > best->size);
    if (better) best = SizedGraphSet{total, GraphSet::build(b.config, {std::move(kept)})};
  }
  return best;
}

}  // namespace mrsc
