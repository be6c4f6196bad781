#include "mrsc/engine.hpp"

#include <algorithm>

namespace mrsc {

bool embeds(const Exp& a, const Exp& b) {
  if (a.isVar() && b.isVar()) return true;
  if (b.isCall()) {
    for (const auto& arg : b.args())
      if (embeds(a, arg)) return true;
    if (a.isCall() && a.kind() == b.kind() && a.name() == b.name() && a.arity() == b.arity()) {
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!embeds(a.arg(i), b.arg(i))) return false;
      return true;
    }
  }
  return false;
}

namespace {

class Supercompiler {
public:
  Supercompiler(const Program& p, FreshSource& fresh, const EngineOptions& opts)
      : p_(p), fresh_(fresh), opts_(opts) {}

  GraphSet run(const Exp& c0) { return rec(0, c0); }

private:
  void charge() {
    if (++nodes_ > opts_.maxGraphSetNodes)
      throw BudgetExceeded("graph set exceeds " + std::to_string(opts_.maxGraphSetNodes) +
                           " nodes");
  }

  // history_ holds the root-to-current path; the most recent entry is last.
  GraphSet rec(std::size_t level, const Exp& c) {
    charge();
    // The shallowest ancestor wins when several match.
    for (const auto& h : history_) {
      if (auto ren = matchVariables(h.config, c)) return GraphSet::fold(c, level - h.level, *ren);
    }

    auto rs = multiDriveSteps(p_, c, fresh_);
    bool global = std::any_of(rs.begin(), rs.end(), [](const MultiDriveStepResult& r) {
      return std::holds_alternative<MdsrCases>(r);
    });
    HistoryKind kind = global ? HistoryKind::Global : HistoryKind::Local;
    if (whistles(kind, c)) return GraphSet::none();

    history_.push_back({kind, level, c});
    std::vector<GsAlternative> alts;
    alts.reserve(rs.size());
    for (auto& r : rs) {
      GsAlternative alt{std::move(r), {}};
      for (const auto& sub : mdsrSubExps(alt.step)) alt.children.push_back(rec(level + 1, sub));
      alts.push_back(std::move(alt));
    }
    history_.pop_back();
    return GraphSet::build(c, std::move(alts));
  }

  bool whistles(HistoryKind kind, const Exp& c) const {
    if (kind == HistoryKind::Global) {
      return std::any_of(history_.begin(), history_.end(), [&](const HistoryEntry& h) {
        return h.kind == HistoryKind::Global && embeds(h.config, c);
      });
    }
    for (auto it = history_.rbegin(); it != history_.rend() && it->kind == HistoryKind::Local; ++it)
      if (embeds(it->config, c)) return true;
    return false;
  }

  const Program& p_;
  FreshSource& fresh_;
  const EngineOptions& opts_;
  std::vector<HistoryEntry> history_;
  std::size_t nodes_ = 0;
};

}  // namespace

GraphSet mrScp(const Program& p, const Exp& c0, FreshSource& fresh, const EngineOptions& opts) {
  return Supercompiler(p, fresh, opts).run(c0);
}

GraphSet mrScp(const Program& p, const Exp& c0, const EngineOptions& opts) {
  FreshSource fresh(p, c0);
  return mrScp(p, c0, fresh, opts);
}

}  // namespace mrsc
