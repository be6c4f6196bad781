#include "mrsc/lang.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mrsc {

namespace {

class Checker {
public:
  explicit Checker(const Program& p) : p_(p) {}

  void run(const Exp* target) {
    for (const auto& d : p_.defs()) checkDef(d);
    if (target) checkExp(*target, "the target expression");
    checkExhaustive();
  }

private:
  void checkDistinct(const std::vector<std::string>& names, const std::string& fn) {
    std::set<std::string> seen;
    for (const auto& n : names)
      if (!seen.insert(n).second)
        throw WellFormednessError("variable '" + n + "' bound twice in '" + fn + "'", fn);
  }

  void checkScope(const Exp& body, const std::vector<std::string>& bound, const std::string& fn) {
    for (const auto& v : freeVars(body))
      if (std::find(bound.begin(), bound.end(), v) == bound.end())
        throw WellFormednessError("unbound variable '" + v + "' in '" + fn + "'", fn);
  }

  void noteConstructor(const std::string& con, std::size_t arity, const std::string& where) {
    auto [it, fresh] = conArity_.emplace(con, arity);
    if (!fresh && it->second != arity)
      throw WellFormednessError("constructor '" + con + "' used with arity " +
                                    std::to_string(arity) + " in " + where + ", expected " +
                                    std::to_string(it->second),
                                con);
  }

  void checkExp(const Exp& e, const std::string& where) {
    if (e.isVar()) return;
    if (e.isCon()) {
      noteConstructor(e.name(), e.arity(), where);
    } else {
      const Def* d = p_.find(e.name());
      if (!d) throw WellFormednessError("call to undefined function '" + e.name() + "' in " + where,
                                        e.name());
      if (defArity(*d) != e.arity())
        throw WellFormednessError("function '" + e.name() + "' called with " +
                                      std::to_string(e.arity()) + " arguments in " + where +
                                      ", expects " + std::to_string(defArity(*d)),
                                  e.name());
    }
    for (const auto& a : e.args()) checkExp(a, where);
  }

  void checkDef(const Def& d) {
    if (const auto* f = std::get_if<FunDef>(&d)) {
      checkDistinct(f->params, f->name);
      checkScope(f->body, f->params, f->name);
      checkExp(f->body, "'" + f->name + "'");
      return;
    }
    const auto& m = std::get<MatchDef>(d);
    std::set<std::string> cons;
    for (const auto& c : m.clauses) {
      if (c.params.size() != m.clauses.front().params.size())
        throw WellFormednessError("clauses of '" + m.name + "' differ in parameter count", m.name);
      if (!cons.insert(c.pattern.con).second)
        throw WellFormednessError("overlapping clauses for constructor '" + c.pattern.con +
                                      "' in '" + m.name + "'",
                                  m.name);
      noteConstructor(c.pattern.con, c.pattern.vars.size(), "a pattern of '" + m.name + "'");
      std::vector<std::string> bound = c.pattern.vars;
      bound.insert(bound.end(), c.params.begin(), c.params.end());
      checkDistinct(bound, m.name);
      checkScope(c.body, bound, m.name);
      checkExp(c.body, "'" + m.name + "'");
    }
  }

  // Constructors sharing a clause head set belong to one data group; every
  // pattern-matching function must cover its whole group.
  void checkExhaustive() {
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> root = [&](const std::string& c) {
      auto it = parent.find(c);
      if (it == parent.end() || it->second == c) return c;
      return it->second = root(it->second);
    };
    for (const auto& d : p_.defs()) {
      const auto* m = std::get_if<MatchDef>(&d);
      if (!m) continue;
      for (const auto& c : m->clauses) {
        parent.emplace(c.pattern.con, c.pattern.con);
        parent[root(c.pattern.con)] = root(m->clauses.front().pattern.con);
      }
    }
    std::map<std::string, std::set<std::string>> groups;
    for (const auto& [c, _] : parent) groups[root(c)].insert(c);
    for (const auto& d : p_.defs()) {
      const auto* m = std::get_if<MatchDef>(&d);
      if (!m) continue;
      const auto& group = groups[root(m->clauses.front().pattern.con)];
      for (const auto& c : group)
        if (!m->clauseFor(c))
          throw WellFormednessError("non-exhaustive clauses in '" + m->name +
                                        "': missing constructor '" + c + "'",
                                    m->name);
    }
  }

  const Program& p_;
  std::map<std::string, std::size_t> conArity_;
};

}  // namespace

void checkProgram(const Program& p, const Exp* target) { Checker(p).run(target); }

}  // namespace mrsc
