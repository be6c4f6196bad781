#include <algorithm>
#include <set>

#include "mrsc/cli.hpp"

namespace mrsc {

namespace {

class UnionFind {
public:
  std::size_t make() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
  std::vector<std::size_t> parent_;
};

// Monomorphic type inference by unification of type variables.
class Typer {
public:
  explicit Typer(const Program& p) {
    for (const auto& d : p.defs()) {
      auto& f = funs_[defName(d)];
      for (std::size_t i = 0; i < defArity(d); ++i) f.params.push_back(uf_.make());
      f.result = uf_.make();
    }
    for (const auto& d : p.defs()) {
      const Sig& f = funs_.at(defName(d));
      if (const auto* fd = std::get_if<FunDef>(&d)) {
        std::map<std::string, std::size_t> scope;
        for (std::size_t i = 0; i < fd->params.size(); ++i) scope[fd->params[i]] = f.params[i];
        uf_.unite(type(fd->body, scope), f.result);
        continue;
      }
      for (const auto& c : std::get<MatchDef>(d).clauses) {
        Con& con = conOf(c.pattern.con, c.pattern.vars.size());
        uf_.unite(con.result, f.params[0]);
        std::map<std::string, std::size_t> scope;
        for (std::size_t i = 0; i < c.pattern.vars.size(); ++i) scope[c.pattern.vars[i]] = con.fields[i];
        for (std::size_t i = 0; i < c.params.size(); ++i) scope[c.params[i]] = f.params[i + 1];
        uf_.unite(type(c.body, scope), f.result);
      }
    }
  }

  // Types the free variables of an open expression.
  std::map<std::string, std::size_t> typeTarget(const Exp& e) {
    std::map<std::string, std::size_t> scope;
    for (const auto& v : freeVars(e)) scope[v] = uf_.make();
    type(e, scope);
    return scope;
  }

  std::size_t find(std::size_t t) { return uf_.find(t); }

  struct Con {
    std::size_t result;
    std::vector<std::size_t> fields;
  };
  const std::map<std::string, Con>& constructors() const { return cons_; }

private:
  struct Sig {
    std::vector<std::size_t> params;
    std::size_t result = 0;
  };

  Con& conOf(const std::string& name, std::size_t arity) {
    auto it = cons_.find(name);
    if (it != cons_.end()) return it->second;
    Con c{uf_.make(), {}};
    for (std::size_t i = 0; i < arity; ++i) c.fields.push_back(uf_.make());
    return cons_.emplace(name, std::move(c)).first->second;
  }

  std::size_t type(const Exp& e, std::map<std::string, std::size_t>& scope) {
    if (e.isVar()) {
      auto [it, fresh] = scope.emplace(e.name(), 0);
      if (fresh) it->second = uf_.make();
      return it->second;
    }
    std::vector<std::size_t> args;
    for (const auto& a : e.args()) args.push_back(type(a, scope));
    if (e.isCon()) {
      const Con& c = conOf(e.name(), e.arity());
      for (std::size_t i = 0; i < args.size(); ++i) uf_.unite(args[i], c.fields[i]);
      return c.result;
    }
    auto it = funs_.find(e.name());
    if (it == funs_.end()) return uf_.make();
    for (std::size_t i = 0; i < args.size() && i < it->second.params.size(); ++i)
      uf_.unite(args[i], it->second.params[i]);
    return it->second.result;
  }

  UnionFind uf_;
  std::map<std::string, Sig> funs_;
  std::map<std::string, Con> cons_;
};

void collectNames(const Exp& e, std::set<std::string>& out) {
  out.insert(e.name());
  if (e.isCall())
    for (const auto& a : e.args()) collectNames(a, out);
}

}  // namespace

ValueGenerator::ValueGenerator(const Program& p, const Exp& target) {
  Typer typer(p);
  auto scope = typer.typeTarget(target);
  vars_ = freeVars(target);
  for (const auto& v : vars_) varType_[v] = typer.find(scope.at(v));
  for (const auto& [name, c] : typer.constructors()) {
    ConInfo info{name, {}};
    for (auto f : c.fields) info.fields.push_back(typer.find(f));
    inhabitants_[typer.find(c.result)].push_back(std::move(info));
  }

  std::set<std::string> used;
  collectNames(target, used);
  for (const auto& d : p.defs()) {
    used.insert(defName(d));
    if (const auto* f = std::get_if<FunDef>(&d)) {
      collectNames(f->body, used);
    } else {
      for (const auto& c : std::get<MatchDef>(d).clauses) {
        used.insert(c.pattern.con);
        collectNames(c.body, used);
      }
    }
  }
  std::vector<std::size_t> todo;
  for (const auto& [v, t] : varType_) todo.push_back(t);
  std::set<std::size_t> reachable;
  while (!todo.empty()) {
    std::size_t t = todo.back();
    todo.pop_back();
    if (!reachable.insert(t).second) continue;
    for (const auto& c : inhabitants_[t]) todo.insert(todo.end(), c.fields.begin(), c.fields.end());
  }

  // Types without finite values (nothing constructs them, or every
  // constructor recurses) get a private nullary constructor.
  rank_ = ranks(reachable);
  unsigned counter = 0;
  for (auto t : reachable) {
    if (rank_.contains(t)) continue;
    std::string name;
    do name = "Atom" + std::to_string(counter++);
    while (used.contains(name));
    inhabitants_[t].push_back({name, {}});
  }
  rank_ = ranks(reachable);
}

std::map<std::size_t, std::size_t> ValueGenerator::ranks(const std::set<std::size_t>& types) const {
  // rank(t) = height of the smallest finite value of type t
  std::map<std::size_t, std::size_t> rank;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto t : types) {
      for (const auto& c : inhabitants_.at(t)) {
        std::size_t r = 1;
        bool finite = true;
        for (auto f : c.fields) {
          auto it = rank.find(f);
          if (it == rank.end()) {
            finite = false;
            break;
          }
          r = std::max(r, it->second + 1);
        }
        if (!finite) continue;
        auto [it, fresh] = rank.emplace(t, r);
        if (fresh || r < it->second) {
          it->second = r;
          changed = true;
        }
      }
    }
  }
  return rank;
}

Value ValueGenerator::generateType(std::size_t type, int depth, std::mt19937_64& rng) const {
  const auto& cons = inhabitants_.at(type);
  std::vector<const ConInfo*> pool;
  if (depth < kMaxDepth) {
    for (const auto& c : cons) pool.push_back(&c);
  } else {
    // Past the bound only constructors that shrink towards a leaf qualify.
    std::size_t r = rank_.at(type);
    for (const auto& c : cons)
      if (std::all_of(c.fields.begin(), c.fields.end(), [&](std::size_t f) { return rank_.at(f) < r; }))
        pool.push_back(&c);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const ConInfo& c = *pool[pick(rng)];
  Value v{c.name, {}};
  for (auto f : c.fields) v.args.push_back(generateType(f, depth + 1, rng));
  return v;
}

Value ValueGenerator::generate(const std::string& var, std::mt19937_64& rng) const {
  return generateType(varType_.at(var), 0, rng);
}

Env ValueGenerator::sample(std::mt19937_64& rng) const {
  Env env;
  for (const auto& v : vars_) env.emplace(v, generate(v, rng));
  return env;
}

std::vector<std::pair<std::string, std::size_t>> ValueGenerator::constructorsOf(
    const std::string& var) const {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& c : inhabitants_.at(varType_.at(var))) out.emplace_back(c.name, c.fields.size());
  return out;
}

}  // namespace mrsc
