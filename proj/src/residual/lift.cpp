#include <algorithm>
#include <optional>

#include "mrsc/residual.hpp"

namespace mrsc {

namespace {

std::vector<std::string> without(const std::vector<std::string>& vars,
                                 const std::vector<std::string>& drop) {
  std::vector<std::string> out;
  for (const auto& v : vars)
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) out.push_back(v);
  return out;
}

std::vector<Exp> asVars(const std::vector<std::string>& names) {
  std::vector<Exp> out;
  for (const auto& n : names) out.push_back(Exp::var(n));
  return out;
}

// Lifts the case and let expressions of one top-level definition. Generated
// functions are named after the definition with per-kind counters assigned
// in pre-order.
class Lifter {
public:
  Lifter(std::string prefix, std::vector<std::optional<Def>>& out, std::set<std::string>& lets)
      : prefix_(std::move(prefix)), out_(out), lets_(lets) {}

  Exp lift(const ExtExp& e) {
    if (const auto* v = e.as<ExtVar>()) return Exp::var(v->name);
    if (const auto* c = e.as<ExtCall>()) {
      std::vector<Exp> args;
      for (const auto& a : c->args) args.push_back(lift(a));
      return Exp::call(c->kind, c->name, std::move(args));
    }
    if (const auto* k = e.as<ExtCase>()) return liftCase(*k);
    return liftLet(std::get<ExtLet>(e.node()));
  }

private:
  Exp liftCase(const ExtCase& k) {
    std::string name = prefix_ + "_case" + std::to_string(caseCount_++);
    std::size_t slot = reserve();
    std::vector<std::string> others;
    for (const auto& [pat, body] : k.branches)
      for (const auto& v : without(freeVars(body), pat.vars))
        if (std::find(others.begin(), others.end(), v) == others.end()) others.push_back(v);
    MatchDef m{name, {}};
    for (const auto& [pat, body] : k.branches) m.clauses.push_back({pat, others, lift(body)});
    out_[slot] = std::move(m);
    std::vector<Exp> args{Exp::var(k.scrutinee)};
    for (auto& v : asVars(others)) args.push_back(std::move(v));
    return Exp::fun(name, std::move(args));
  }

  Exp liftLet(const ExtLet& l) {
    std::string name = prefix_ + "_let" + std::to_string(letCount_++);
    std::size_t slot = reserve();
    lets_.insert(name);
    std::vector<std::string> params;
    for (const auto& b : l.bindings) params.push_back(b.first);
    auto others = without(freeVars(letBody(l)), params);
    params.insert(params.end(), others.begin(), others.end());
    Exp body = lift(letBody(l));
    out_[slot] = FunDef{name, params, std::move(body)};
    std::vector<Exp> args;
    for (const auto& b : l.bindings) args.push_back(lift(b.second));
    for (auto& v : asVars(others)) args.push_back(std::move(v));
    return Exp::fun(name, std::move(args));
  }

  std::size_t reserve() {
    out_.emplace_back();
    return out_.size() - 1;
  }

  std::string prefix_;
  std::vector<std::optional<Def>>& out_;
  std::set<std::string>& lets_;
  unsigned caseCount_ = 0;
  unsigned letCount_ = 0;
};

}  // namespace

LiftedProgram lift(const ExtProgram& ep) {
  std::vector<std::optional<Def>> defs;
  std::set<std::string> lets;
  for (const auto& d : ep.defs) {
    std::size_t slot = defs.size();
    defs.emplace_back();
    Lifter lifter(d.name, defs, lets);
    Exp body = lifter.lift(d.body);
    defs[slot] = FunDef{d.name, d.params, std::move(body)};
  }
  Exp main = Lifter("main", defs, lets).lift(ep.main);
  std::vector<Def> out;
  for (auto& d : defs) out.push_back(std::move(*d));
  return {Program(std::move(out)), std::move(main), std::move(lets)};
}

}  // namespace mrsc
