#include <deque>
#include <map>

#include "mrsc/residual.hpp"

namespace mrsc {

namespace {

using VarMap = std::map<std::string, std::string>;

class AlphaChecker {
public:
  AlphaChecker(const Program& p, const Program& q) : p_(p), q_(q) {}

  bool run(const Exp& a, const Exp& b) {
    VarMap free;
    if (!expr(a, b, free, true)) return false;
    while (!todo_.empty()) {
      auto [f, g] = todo_.front();
      todo_.pop_front();
      if (!def(*p_.find(f), *q_.find(g))) return false;
    }
    return true;
  }

  std::size_t paired() const { return fwd_.size(); }

private:
  // Pairs f with g, rejecting a mapping that is not a bijection.
  bool pairFunctions(const std::string& f, const std::string& g) {
    const Def* df = p_.find(f);
    const Def* dg = q_.find(g);
    if (!df || !dg) return !df && !dg && f == g;
    auto it = fwd_.find(f);
    if (it != fwd_.end()) return it->second == g;
    if (bwd_.contains(g)) return false;
    fwd_.emplace(f, g);
    bwd_.emplace(g, f);
    todo_.emplace_back(f, g);
    return true;
  }

  // `literal` compares unmapped variables by name (the main expressions).
  bool expr(const Exp& a, const Exp& b, const VarMap& vars, bool literal) {
    if (a.isVar() != b.isVar()) return false;
    if (a.isVar()) {
      auto it = vars.find(a.name());
      if (it != vars.end()) return it->second == b.name();
      return literal && a.name() == b.name();
    }
    if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
    if (a.isCon() ? a.name() != b.name() : !pairFunctions(a.name(), b.name())) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!expr(a.arg(i), b.arg(i), vars, literal)) return false;
    return true;
  }

  static bool bind(VarMap& m, const std::vector<std::string>& xs, const std::vector<std::string>& ys) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) m[xs[i]] = ys[i];
    return true;
  }

  bool def(const Def& a, const Def& b) {
    if (a.index() != b.index() || defArity(a) != defArity(b)) return false;
    if (const auto* f = std::get_if<FunDef>(&a)) {
      const auto& g = std::get<FunDef>(b);
      VarMap m;
      return bind(m, f->params, g.params) && expr(f->body, g.body, m, false);
    }
    const auto& ma = std::get<MatchDef>(a);
    const auto& mb = std::get<MatchDef>(b);
    if (ma.clauses.size() != mb.clauses.size()) return false;
    for (const auto& c : ma.clauses) {
      const Clause* d = mb.clauseFor(c.pattern.con);
      if (!d) return false;
      VarMap m;
      if (!bind(m, c.pattern.vars, d->pattern.vars) || !bind(m, c.params, d->params)) return false;
      if (!expr(c.body, d->body, m, false)) return false;
    }
    return true;
  }

  const Program& p_;
  const Program& q_;
  std::map<std::string, std::string> fwd_, bwd_;
  std::deque<std::pair<std::string, std::string>> todo_;
};

}  // namespace

bool alphaEquivalent(const Program& p, const Exp& mainP, const Program& q, const Exp& mainQ) {
  AlphaChecker checker(p, q);
  if (!checker.run(mainP, mainQ)) return false;
  return checker.paired() == p.defs().size() && checker.paired() == q.defs().size();
}

}  // namespace mrsc
