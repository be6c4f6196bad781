#include "mrsc/lang.hpp"

namespace mrsc {

Exp Value::toExp() const {
  std::vector<Exp> as;
  as.reserve(args.size());
  for (const auto& a : args) as.push_back(a.toExp());
  return Exp::con(con, std::move(as));
}

std::optional<Value> toValue(const Exp& e) {
  if (!e.isCon()) return std::nullopt;
  Value v{e.name(), {}};
  for (const auto& a : e.args()) {
    auto av = toValue(a);
    if (!av) return std::nullopt;
    v.args.push_back(std::move(*av));
  }
  return v;
}

namespace {

struct FuelExhausted {};
struct StuckAt {
  std::string reason;
};

// Call-by-name reduction by substitution: arguments travel unevaluated and a
// pattern-matching call forces only its first argument.
class Evaluator {
public:
  Evaluator(const Program& p, std::uint64_t fuel) : p_(p), fuel_(fuel) {}

  Exp whnf(Exp e) {
    for (;;) {
      if (e.isVar()) throw StuckAt{"free variable '" + e.name() + "'"};
      if (e.isCon()) return e;
      const Def* d = p_.find(e.name());
      if (!d) throw StuckAt{"undefined function '" + e.name() + "'"};
      if (const auto* f = std::get_if<FunDef>(d)) {
        tick();
        Subst s;
        for (std::size_t i = 0; i < f->params.size(); ++i) s.emplace(f->params[i], e.arg(i));
        e = substitute(f->body, s);
        continue;
      }
      const auto& m = std::get<MatchDef>(*d);
      Exp head = whnf(e.arg(0));
      const Clause* c = m.clauseFor(head.name());
      if (!c || c->pattern.vars.size() != head.arity())
        throw StuckAt{"no clause of '" + m.name + "' matches " + head.name()};
      tick();
      Subst s;
      for (std::size_t i = 0; i < c->pattern.vars.size(); ++i)
        s.emplace(c->pattern.vars[i], head.arg(i));
      for (std::size_t i = 0; i < c->params.size(); ++i) s.emplace(c->params[i], e.arg(i + 1));
      e = substitute(c->body, s);
    }
  }

  Value full(const Exp& e) {
    Exp h = whnf(e);
    Value v{h.name(), {}};
    v.args.reserve(h.arity());
    for (const auto& a : h.args()) v.args.push_back(full(a));
    return v;
  }

  std::uint64_t steps() const { return steps_; }

private:
  void tick() {
    if (steps_ >= fuel_) throw FuelExhausted{};
    ++steps_;
  }

  const Program& p_;
  std::uint64_t fuel_;
  std::uint64_t steps_ = 0;
};

}  // namespace

EvalResult evalCBN(const Program& p, const Exp& e, const Env& env, std::uint64_t fuel) {
  if (fuel == 0) return {OutOfFuel{}, 0};
  Subst s;
  for (const auto& [name, v] : env) s.emplace(name, v.toExp());
  Evaluator ev(p, fuel);
  try {
    Value v = ev.full(substitute(e, s));
    return {std::move(v), ev.steps()};
  } catch (const FuelExhausted&) {
    return {OutOfFuel{}, ev.steps()};
  } catch (const StuckAt& st) {
    return {Stuck{st.reason}, ev.steps()};
  }
}

}  // namespace mrsc
