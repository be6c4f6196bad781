#include "mrsc/lang.hpp"

#include <algorithm>
#include <set>

namespace mrsc {

Exp::Exp() : Exp(Exp::var("_")) {}

Exp Exp::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->isVar = true;
  n->name = std::move(name);
  return Exp(std::move(n));
}

Exp Exp::call(CallKind kind, std::string name, std::vector<Exp> args) {
  auto n = std::make_shared<Node>();
  n->isVar = false;
  n->kind = kind;
  n->name = std::move(name);
  n->args = std::move(args);
  return Exp(std::move(n));
}

std::size_t Exp::size() const {
  std::size_t n = 1;
  for (const auto& a : args()) n += a.size();
  return n;
}

bool operator==(const Exp& a, const Exp& b) {
  if (a.node_ == b.node_) return true;
  if (a.isVar() != b.isVar() || a.name() != b.name()) return false;
  if (a.isVar()) return true;
  if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a.arg(i) != b.arg(i)) return false;
  return true;
}

Exp Pattern::toExp() const {
  std::vector<Exp> args;
  args.reserve(vars.size());
  for (const auto& v : vars) args.push_back(Exp::var(v));
  return Exp::con(con, std::move(args));
}

const Clause* MatchDef::clauseFor(std::string_view con) const {
  for (const auto& c : clauses)
    if (c.pattern.con == con) return &c;
  return nullptr;
}

const std::string& defName(const Def& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

std::size_t defArity(const Def& d) {
  if (const auto* f = std::get_if<FunDef>(&d)) return f->params.size();
  return std::get<MatchDef>(d).arity();
}

Program::Program(std::vector<Def> defs) : defs_(std::move(defs)) {
  for (std::size_t i = 0; i < defs_.size(); ++i) index_.emplace(defName(defs_[i]), i);
}

const Def* Program::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &defs_[it->second];
}

Exp substitute(const Exp& e, const Subst& s) {
  if (s.empty()) return e;
  if (e.isVar()) {
    auto it = s.find(e.name());
    return it == s.end() ? e : it->second;
  }
  std::vector<Exp> args;
  args.reserve(e.arity());
  bool changed = false;
  for (const auto& a : e.args()) {
    args.push_back(substitute(a, s));
    changed = changed || !args.back().sameNode(a);
  }
  return changed ? Exp::call(e.kind(), e.name(), std::move(args)) : e;
}

Exp rename(const Exp& e, const Renaming& r) {
  Subst s;
  for (const auto& [from, to] : r) s.emplace(from, Exp::var(to));
  return substitute(e, s);
}

void collectVars(const Exp& e, std::vector<std::string>& out) {
  if (e.isVar()) {
    if (std::find(out.begin(), out.end(), e.name()) == out.end()) out.push_back(e.name());
    return;
  }
  for (const auto& a : e.args()) collectVars(a, out);
}

std::vector<std::string> freeVars(const Exp& e) {
  std::vector<std::string> out;
  collectVars(e, out);
  return out;
}

std::size_t countOccurrences(const Exp& e, std::string_view var) {
  if (e.isVar()) return e.name() == var ? 1 : 0;
  std::size_t n = 0;
  for (const auto& a : e.args()) n += countOccurrences(a, var);
  return n;
}

namespace {

bool matchRenaming(const Exp& a, const Exp& c, Renaming& fwd, Renaming& bwd) {
  if (a.isVar()) {
    if (!c.isVar()) return false;
    auto f = fwd.find(a.name());
    auto b = bwd.find(c.name());
    if (f == fwd.end() && b == bwd.end()) {
      fwd.emplace(a.name(), c.name());
      bwd.emplace(c.name(), a.name());
      return true;
    }
    return f != fwd.end() && b != bwd.end() && f->second == c.name() && b->second == a.name();
  }
  if (!c.isCall() || a.kind() != c.kind() || a.name() != c.name() || a.arity() != c.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!matchRenaming(a.arg(i), c.arg(i), fwd, bwd)) return false;
  return true;
}

bool matchVars(const Exp& a, const Exp& c, Renaming& map) {
  if (a.isVar()) {
    if (!c.isVar()) return false;
    auto [it, fresh] = map.emplace(a.name(), c.name());
    return fresh || it->second == c.name();
  }
  if (!c.isCall() || a.kind() != c.kind() || a.name() != c.name() || a.arity() != c.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!matchVars(a.arg(i), c.arg(i), map)) return false;
  return true;
}

void collectDefVars(const Def& d, std::set<std::string>& out) {
  auto addExp = [&](const Exp& e) {
    for (auto& v : freeVars(e)) out.insert(v);
  };
  if (const auto* f = std::get_if<FunDef>(&d)) {
    out.insert(f->params.begin(), f->params.end());
    addExp(f->body);
    return;
  }
  for (const auto& c : std::get<MatchDef>(d).clauses) {
    out.insert(c.pattern.vars.begin(), c.pattern.vars.end());
    out.insert(c.params.begin(), c.params.end());
    addExp(c.body);
  }
}

}  // namespace

std::optional<Renaming> findRenaming(const Exp& ancestor, const Exp& current) {
  Renaming fwd, bwd;
  if (!matchRenaming(ancestor, current, fwd, bwd)) return std::nullopt;
  return fwd;
}

std::optional<Renaming> matchVariables(const Exp& general, const Exp& specific) {
  Renaming map;
  if (!matchVars(general, specific, map)) return std::nullopt;
  return map;
}

std::vector<std::string> programVars(const Program& p) {
  std::set<std::string> vars;
  for (const auto& d : p.defs()) collectDefVars(d, vars);
  return {vars.begin(), vars.end()};
}

}  // namespace mrsc
