#include <algorithm>
#include <map>
#include <set>

#include "mrsc/residual.hpp"

namespace mrsc {

namespace {

struct State {
  std::vector<Def> defs;
  Exp main;
  std::set<std::string> lets;

  const Def* find(const std::string& name) const {
    for (const auto& d : defs)
      if (defName(d) == name) return &d;
    return nullptr;
  }
};

bool calls(const Exp& e, const std::string& f) {
  if (e.isVar()) return false;
  if (e.isFun() && e.name() == f) return true;
  return std::any_of(e.args().begin(), e.args().end(), [&](const Exp& a) { return calls(a, f); });
}

// Under call-by-name an argument may be substituted for its parameter when it
// is a variable or when the parameter is used at most once.
class Inliner {
public:
  explicit Inliner(const State& s) : s_(s) {
    for (const auto& name : s.lets) {
      const auto* f = s.find(name) ? std::get_if<FunDef>(s.find(name)) : nullptr;
      if (f && !calls(f->body, f->name)) inlinable_.emplace(name, f);
    }
  }

  Exp rewrite(const Exp& e, std::size_t depth = 0) {
    if (e.isVar()) return e;
    std::vector<Exp> args;
    for (const auto& a : e.args()) args.push_back(rewrite(a, depth));
    if (e.isFun() && depth < inlinable_.size() + 1) {
      auto it = inlinable_.find(e.name());
      if (it != inlinable_.end() && trivial(*it->second, args)) {
        Subst s;
        for (std::size_t i = 0; i < args.size(); ++i) s.emplace(it->second->params[i], args[i]);
        return rewrite(substitute(it->second->body, s), depth + 1);
      }
    }
    return Exp::call(e.kind(), e.name(), std::move(args));
  }

private:
  static bool trivial(const FunDef& f, const std::vector<Exp>& args) {
    for (std::size_t i = 0; i < args.size(); ++i)
      if (!args[i].isVar() && countOccurrences(f.body, f.params[i]) > 1) return false;
    return true;
  }

  const State& s_;
  std::map<std::string, const FunDef*> inlinable_;
};

void inlineLets(State& s) {
  Inliner in(s);
  std::vector<Def> defs;
  for (const auto& d : s.defs) {
    if (const auto* f = std::get_if<FunDef>(&d)) {
      defs.push_back(FunDef{f->name, f->params, in.rewrite(f->body)});
    } else {
      MatchDef m = std::get<MatchDef>(d);
      for (auto& c : m.clauses) c.body = in.rewrite(c.body);
      defs.push_back(std::move(m));
    }
  }
  s.main = in.rewrite(s.main);
  s.defs = std::move(defs);
}

// Canonical text of a body: parameters by position, calls by class.
std::string canonical(const Exp& e, const std::map<std::string, std::string>& vars,
                      const std::map<std::string, std::size_t>& cls) {
  std::string out;
  if (e.isVar()) {
    auto it = vars.find(e.name());
    return it == vars.end() ? "?" + e.name() : it->second;
  }
  auto it = e.isFun() ? cls.find(e.name()) : cls.end();
  out = it == cls.end() ? e.name() : "@" + std::to_string(it->second);
  out += '(';
  for (const auto& a : e.args()) out += canonical(a, vars, cls) + ',';
  return out + ')';
}

std::string signature(const Def& d, const std::map<std::string, std::size_t>& cls) {
  if (const auto* f = std::get_if<FunDef>(&d)) {
    std::map<std::string, std::string> vars;
    for (std::size_t i = 0; i < f->params.size(); ++i) vars[f->params[i]] = "#" + std::to_string(i);
    return "fun/" + std::to_string(f->params.size()) + ":" + canonical(f->body, vars, cls);
  }
  const auto& m = std::get<MatchDef>(d);
  std::vector<const Clause*> clauses;
  for (const auto& c : m.clauses) clauses.push_back(&c);
  std::sort(clauses.begin(), clauses.end(),
            [](const Clause* a, const Clause* b) { return a->pattern.con < b->pattern.con; });
  std::string out = "match/" + std::to_string(m.arity());
  for (const auto* c : clauses) {
    std::map<std::string, std::string> vars;
    for (std::size_t i = 0; i < c->pattern.vars.size(); ++i)
      vars[c->pattern.vars[i]] = "#p" + std::to_string(i);
    for (std::size_t i = 0; i < c->params.size(); ++i) vars[c->params[i]] = "#" + std::to_string(i);
    out += "|" + c->pattern.con + "/" + std::to_string(c->pattern.vars.size()) + ":" +
           canonical(c->body, vars, cls);
  }
  return out;
}

Exp renameCalls(const Exp& e, const std::map<std::string, std::string>& to) {
  if (e.isVar()) return e;
  std::vector<Exp> args;
  for (const auto& a : e.args()) args.push_back(renameCalls(a, to));
  auto it = e.isFun() ? to.find(e.name()) : to.end();
  return Exp::call(e.kind(), it == to.end() ? e.name() : it->second, std::move(args));
}

Def renameCalls(const Def& d, const std::map<std::string, std::string>& to) {
  if (const auto* f = std::get_if<FunDef>(&d)) return FunDef{f->name, f->params, renameCalls(f->body, to)};
  MatchDef m = std::get<MatchDef>(d);
  for (auto& c : m.clauses) c.body = renameCalls(c.body, to);
  return m;
}

// Coarsest partition in which equivalent definitions have equal bodies up to
// parameter names and the classes of the functions they call.
void mergeDuplicates(State& s) {
  std::map<std::string, std::size_t> cls;
  for (const auto& d : s.defs) cls[defName(d)] = 0;
  std::size_t classes = 1;
  for (std::size_t round = 0; round <= s.defs.size(); ++round) {
    std::map<std::pair<std::size_t, std::string>, std::size_t> ids;
    std::map<std::string, std::size_t> next;
    for (const auto& d : s.defs) {
      auto key = std::make_pair(cls[defName(d)], signature(d, cls));
      next[defName(d)] = ids.emplace(key, ids.size()).first->second;
    }
    cls = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }

  // The last member of a class survives.
  std::map<std::size_t, std::string> survivor;
  for (const auto& d : s.defs) survivor[cls[defName(d)]] = defName(d);
  std::map<std::string, std::string> to;
  std::map<std::size_t, bool> allLets;
  for (const auto& d : s.defs) {
    const auto& name = defName(d);
    auto [it, fresh] = allLets.emplace(cls[name], true);
    it->second = it->second && s.lets.contains(name);
    if (survivor[cls[name]] != name) to[name] = survivor[cls[name]];
  }
  if (to.empty()) return;
  std::vector<Def> defs;
  for (const auto& d : s.defs)
    if (!to.contains(defName(d))) defs.push_back(renameCalls(d, to));
  std::set<std::string> lets;
  for (const auto& [c, name] : survivor)
    if (allLets[c]) lets.insert(name);
  s.defs = std::move(defs);
  s.main = renameCalls(s.main, to);
  s.lets = std::move(lets);
}

void collectCalls(const Exp& e, std::vector<std::string>& out) {
  if (e.isVar()) return;
  if (e.isFun()) out.push_back(e.name());
  for (const auto& a : e.args()) collectCalls(a, out);
}

void dropUnreachable(State& s) {
  std::set<std::string> seen;
  std::vector<std::string> todo;
  collectCalls(s.main, todo);
  while (!todo.empty()) {
    std::string f = std::move(todo.back());
    todo.pop_back();
    if (!seen.insert(f).second) continue;
    const Def* d = s.find(f);
    if (!d) continue;
    if (const auto* fd = std::get_if<FunDef>(d)) {
      collectCalls(fd->body, todo);
    } else {
      for (const auto& c : std::get<MatchDef>(*d).clauses) collectCalls(c.body, todo);
    }
  }
  std::erase_if(s.defs, [&](const Def& d) { return !seen.contains(defName(d)); });
  std::erase_if(s.lets, [&](const std::string& n) { return !seen.contains(n); });
}

}  // namespace

ResidualProgram simplify(const LiftedProgram& lp) {
  State s{lp.program.defs(), lp.main, lp.letFunctions};
  std::string before;
  for (;;) {
    inlineLets(s);
    mergeDuplicates(s);
    dropUnreachable(s);
    std::string now = prettyPrint(Program(s.defs), s.main);
    if (now == before) break;
    before = std::move(now);
  }
  return {Program(std::move(s.defs)), std::move(s.main)};
}

}  // namespace mrsc
