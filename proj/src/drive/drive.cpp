#include "mrsc/drive.hpp"

#include <cctype>

namespace mrsc {

const char* stepKindName(const MultiDriveStepResult& r) {
  static constexpr const char* names[] = {"leaf", "con", "unfold", "cases", "let"};
  return names[r.index()];
}

FreshSource::FreshSource(const Program& p, const Exp& initial) {
  for (auto& v : programVars(p)) taken_.insert(std::move(v));
  for (auto& v : freeVars(initial)) taken_.insert(std::move(v));
}

std::string FreshSource::fresh(std::string_view base) {
  std::size_t end = base.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(base[end - 1]))) --end;
  std::string stem(base.substr(0, end));
  if (stem.empty()) stem = "v";
  unsigned& counter = counters_[stem];
  for (;;) {
    std::string name = stem + std::to_string(counter++);
    if (taken_.insert(name).second) return name;
  }
}

ExpContext::ExpContext(Exp skeleton, std::vector<std::size_t> path)
    : skeleton_(std::move(skeleton)), path_(std::move(path)) {}

ExpContext ExpContext::firstArgOf(const Exp& call) { return ExpContext(call, {0}); }

namespace {

Exp replaceAt(const Exp& e, std::span<const std::size_t> path, const Exp& with) {
  if (path.empty()) return with;
  std::vector<Exp> args(e.args().begin(), e.args().end());
  args.at(path.front()) = replaceAt(args[path.front()], path.subspan(1), with);
  return Exp::call(e.kind(), e.name(), std::move(args));
}

// Rewrites everything except the hole itself.
Exp substituteAround(const Exp& e, std::span<const std::size_t> path, const Subst& s) {
  if (path.empty()) return e;
  std::vector<Exp> args;
  args.reserve(e.arity());
  for (std::size_t i = 0; i < e.arity(); ++i)
    args.push_back(i == path.front() ? substituteAround(e.arg(i), path.subspan(1), s)
                                     : substitute(e.arg(i), s));
  return Exp::call(e.kind(), e.name(), std::move(args));
}

}  // namespace

Exp ExpContext::fill(const Exp& e) const { return replaceAt(skeleton_, path_, e); }

Exp ExpContext::holeContents(const Exp& filled) const {
  Exp cur = filled;
  for (auto i : path_) cur = cur.arg(i);
  return cur;
}

ExpContext ExpContext::substituted(const Subst& s) const {
  return ExpContext(substituteAround(skeleton_, path_, s), path_);
}

Branch propagate(const std::string& x, const Clause& clause, std::span<const Exp> args,
                 FreshSource& fresh) {
  Pattern pat{clause.pattern.con, {}};
  Subst s;
  for (const auto& v : clause.pattern.vars) {
    pat.vars.push_back(fresh.fresh(v));
    s.emplace(v, Exp::var(pat.vars.back()));
  }
  const Subst known{{x, pat.toExp()}};
  for (std::size_t i = 0; i < clause.params.size(); ++i)
    s.emplace(clause.params[i], substitute(args[i], known));
  return {std::move(pat), substitute(clause.body, s)};
}

namespace {

const Def& lookup(const Program& p, const Exp& call) {
  const Def* d = p.find(call.name());
  if (!d) throw InternalError("driving a call to undefined function '" + call.name() + "'");
  return *d;
}

const Clause& clauseFor(const MatchDef& m, const Exp& con) {
  const Clause* c = m.clauseFor(con.name());
  if (!c) throw InternalError("no clause of '" + m.name + "' for constructor '" + con.name() + "'");
  return *c;
}

Exp instantiate(const Clause& c, const Exp& con, std::span<const Exp> rest) {
  Subst s;
  for (std::size_t i = 0; i < c.pattern.vars.size(); ++i) s.emplace(c.pattern.vars[i], con.arg(i));
  for (std::size_t i = 0; i < c.params.size(); ++i) s.emplace(c.params[i], rest[i]);
  return substitute(c.body, s);
}

Exp instantiate(const FunDef& f, std::span<const Exp> args) {
  Subst s;
  for (std::size_t i = 0; i < f.params.size(); ++i) s.emplace(f.params[i], args[i]);
  return substitute(f.body, s);
}

std::vector<Branch> caseBranches(const MatchDef& m, const std::string& x,
                                 std::span<const Exp> rest, FreshSource& fresh) {
  std::vector<Branch> branches;
  branches.reserve(m.clauses.size());
  for (const auto& c : m.clauses) branches.push_back(propagate(x, c, rest, fresh));
  return branches;
}

std::vector<Branch> spliceBranches(const ExpContext& ctx, const std::string& x,
                                   const std::vector<Branch>& branches) {
  std::vector<Branch> out;
  out.reserve(branches.size());
  for (const auto& [pat, body] : branches)
    out.emplace_back(pat, ctx.substituted({{x, pat.toExp()}}).fill(body));
  return out;
}

DriveStepResult dsrMap(const ExpContext& ctx, const DriveStepResult& inner) {
  if (const auto* u = std::get_if<DsrUnfold>(&inner)) return DsrUnfold{ctx.fill(u->exp)};
  if (const auto* c = std::get_if<DsrCases>(&inner))
    return DsrCases{c->var, spliceBranches(ctx, c->var, c->branches)};
  throw InternalError("splicing a constructor or variable step into a context");
}

}  // namespace

DriveStepResult driveStep(const Program& p, const Exp& e, FreshSource& fresh) {
  if (e.isVar()) return DsrNone{};
  if (e.isCon()) return DsrCon{e.name(), {e.args().begin(), e.args().end()}};
  const Def& d = lookup(p, e);
  if (const auto* f = std::get_if<FunDef>(&d)) return DsrUnfold{instantiate(*f, e.args())};
  const auto& m = std::get<MatchDef>(d);
  const Exp& scrutinee = e.arg(0);
  auto rest = e.args().subspan(1);
  if (scrutinee.isCon()) return DsrUnfold{instantiate(clauseFor(m, scrutinee), scrutinee, rest)};
  if (scrutinee.isVar()) return DsrCases{scrutinee.name(), caseBranches(m, scrutinee.name(), rest, fresh)};
  return dsrMap(ExpContext::firstArgOf(e), driveStep(p, scrutinee, fresh));
}

std::vector<MultiDriveStepResult> multiDriveSteps(const Program& p, const Exp& e,
                                                  FreshSource& fresh) {
  if (e.isVar()) return {MdsrLeaf{e}};
  if (e.isCon()) return {MdsrCon{e.name(), {e.args().begin(), e.args().end()}}};

  const Def& d = lookup(p, e);
  if (const auto* f = std::get_if<FunDef>(&d)) {
    MdsrLet gen;
    Subst toBinders;
    for (std::size_t i = 0; i < f->params.size(); ++i) {
      std::string y = fresh.fresh(f->params[i]);
      gen.bindings.emplace_back(y, e.arg(i));
      toBinders.emplace(f->params[i], Exp::var(y));
    }
    gen.body = substitute(f->body, toBinders);
    return {std::move(gen), MdsrUnfold{instantiate(*f, e.args())}};
  }

  const auto& m = std::get<MatchDef>(d);
  const Exp& scrutinee = e.arg(0);
  auto rest = e.args().subspan(1);

  if (scrutinee.isCon()) {
    const Clause& c = clauseFor(m, scrutinee);
    MdsrLet gen;
    Subst toBinders;
    for (std::size_t i = 0; i < c.pattern.vars.size(); ++i) {
      std::string u = fresh.fresh(c.pattern.vars[i]);
      gen.bindings.emplace_back(u, scrutinee.arg(i));
      toBinders.emplace(c.pattern.vars[i], Exp::var(u));
    }
    for (std::size_t i = 0; i < c.params.size(); ++i) {
      std::string z = fresh.fresh(c.params[i]);
      gen.bindings.emplace_back(z, rest[i]);
      toBinders.emplace(c.params[i], Exp::var(z));
    }
    gen.body = substitute(c.body, toBinders);
    return {std::move(gen), MdsrUnfold{instantiate(c, scrutinee, rest)}};
  }

  if (scrutinee.isVar())
    return {MdsrCases{scrutinee.name(), caseBranches(m, scrutinee.name(), rest, fresh)}};

  // Matching on a nested call: fully generalize the outer call, then splice
  // every alternative of the inner call into the outer context.
  MdsrLet gen;
  std::vector<Exp> outerArgs;
  gen.bindings.emplace_back(fresh.fresh("x"), scrutinee);
  outerArgs.push_back(Exp::var(gen.bindings.back().first));
  const auto& otherParams = m.clauses.front().params;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    gen.bindings.emplace_back(fresh.fresh(otherParams[i]), rest[i]);
    outerArgs.push_back(Exp::var(gen.bindings.back().first));
  }
  gen.body = Exp::fun(e.name(), std::move(outerArgs));

  std::vector<MultiDriveStepResult> out{std::move(gen)};
  auto mapped = mdsrMap(ExpContext::firstArgOf(e), multiDriveSteps(p, scrutinee, fresh));
  out.insert(out.end(), std::make_move_iterator(mapped.begin()),
             std::make_move_iterator(mapped.end()));
  return out;
}

std::vector<MultiDriveStepResult> mdsrMap(const ExpContext& ctx,
                                          const std::vector<MultiDriveStepResult>& inner) {
  std::vector<MultiDriveStepResult> out;
  out.reserve(inner.size());
  for (const auto& r : inner) {
    if (const auto* u = std::get_if<MdsrUnfold>(&r)) {
      out.push_back(MdsrUnfold{ctx.fill(u->exp)});
    } else if (const auto* l = std::get_if<MdsrLet>(&r)) {
      out.push_back(MdsrLet{l->bindings, ctx.fill(l->body)});
    } else if (const auto* c = std::get_if<MdsrCases>(&r)) {
      out.push_back(MdsrCases{c->var, spliceBranches(ctx, c->var, c->branches)});
    } else {
      throw InternalError(std::string("cannot splice a ") + stepKindName(r) +
                          " step into a context");
    }
  }
  return out;
}

std::vector<Exp> mdsrSubExps(const MultiDriveStepResult& r) {
  return std::visit(
      [](const auto& s) -> std::vector<Exp> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MdsrLeaf>) {
          return {};
        } else if constexpr (std::is_same_v<T, MdsrCon>) {
          return s.args;
        } else if constexpr (std::is_same_v<T, MdsrUnfold>) {
          return {s.exp};
        } else if constexpr (std::is_same_v<T, MdsrCases>) {
          std::vector<Exp> out;
          for (const auto& b : s.branches) out.push_back(b.second);
          return out;
        } else {
          std::vector<Exp> out{s.body};
          for (const auto& b : s.bindings) out.push_back(b.second);
          return out;
        }
      },
      r);
}

}  // namespace mrsc
