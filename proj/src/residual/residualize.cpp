#include <algorithm>
#include <set>
#include <sstream>

#include "mrsc/residual.hpp"

namespace mrsc {

const ExtExp& letBody(const ExtLet& l) { return l.body.front(); }

namespace {

void collect(const ExtExp& e, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto add = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  if (const auto* v = e.as<ExtVar>()) {
    add(v->name);
  } else if (const auto* c = e.as<ExtCall>()) {
    for (const auto& a : c->args) collect(a, bound, out);
  } else if (const auto* k = e.as<ExtCase>()) {
    add(k->scrutinee);
    for (const auto& [pat, body] : k->branches) {
      bound.insert(bound.end(), pat.vars.begin(), pat.vars.end());
      collect(body, bound, out);
      bound.resize(bound.size() - pat.vars.size());
    }
  } else {
    const auto& l = std::get<ExtLet>(e.node());
    for (const auto& b : l.bindings) collect(b.second, bound, out);
    for (const auto& b : l.bindings) bound.push_back(b.first);
    collect(letBody(l), bound, out);
    bound.resize(bound.size() - l.bindings.size());
  }
}

void print(std::ostream& os, const ExtExp& e) {
  if (const auto* v = e.as<ExtVar>()) {
    os << v->name;
  } else if (const auto* c = e.as<ExtCall>()) {
    os << c->name << '(';
    for (std::size_t i = 0; i < c->args.size(); ++i) {
      if (i) os << ", ";
      print(os, c->args[i]);
    }
    os << ')';
  } else if (const auto* k = e.as<ExtCase>()) {
    os << "case " << k->scrutinee << " of {";
    for (std::size_t i = 0; i < k->branches.size(); ++i) {
      os << (i ? "; " : " ") << prettyPrint(k->branches[i].first) << " -> ";
      print(os, k->branches[i].second);
    }
    os << " }";
  } else {
    const auto& l = std::get<ExtLet>(e.node());
    os << "let ";
    for (std::size_t i = 0; i < l.bindings.size(); ++i) {
      if (i) os << ", ";
      os << l.bindings[i].first << " = ";
      print(os, l.bindings[i].second);
    }
    os << " in ";
    print(os, letBody(l));
  }
}

// The deepest step comes first in the name.
std::string pathName(const std::vector<std::size_t>& path) {
  std::string name = "f_";
  for (std::size_t i = path.size(); i-- > 0;) {
    name += std::to_string(path[i]);
    if (i) name += '_';
  }
  return name;
}

// Child positions used in generated names. Let bindings come before the body
// here, unlike in `children()`.
std::vector<std::size_t> childPositions(const ConfGraph& g) {
  std::size_t n = g.children().size();
  std::vector<std::size_t> pos(n);
  if (g.as<CgLet>()) {
    pos[0] = n - 1;
    for (std::size_t i = 1; i < n; ++i) pos[i] = i - 1;
  } else {
    for (std::size_t i = 0; i < n; ++i) pos[i] = i;
  }
  return pos;
}

class Residualizer {
public:
  ExtProgram run(const ConfGraph& g) {
    findTargets(g);
    std::vector<std::size_t> path;
    ExtExp main = translate(g, path);
    return {std::move(defs_), std::move(main)};
  }

private:
  struct Frame {
    ConfGraph node;
    std::vector<std::size_t> path;
  };

  void findTargets(const ConfGraph& root) {
    std::vector<Frame> stack;
    std::vector<std::size_t> path;
    walk(root, path, stack);
  }

  void walk(const ConfGraph& g, std::vector<std::size_t>& path, std::vector<Frame>& stack) {
    if (const auto* f = g.as<CgFold>()) {
      targets_.insert(target(*f, stack).path);
      return;
    }
    stack.push_back({g, path});
    auto kids = g.children();
    auto pos = childPositions(g);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      path.push_back(pos[i]);
      walk(kids[i], path, stack);
      path.pop_back();
    }
    stack.pop_back();
  }

  static const Frame& target(const CgFold& f, const std::vector<Frame>& stack) {
    if (f.back == 0 || f.back > stack.size())
      throw InternalError("fold refers " + std::to_string(f.back) + " levels up at depth " +
                          std::to_string(stack.size()));
    return stack[stack.size() - f.back];
  }

  ExtExp translate(const ConfGraph& g, std::vector<std::size_t>& path) {
    if (const auto* f = g.as<CgFold>()) {
      const Frame& t = target(*f, stack_);
      std::vector<ExtExp> args;
      for (const auto& v : freeVars(t.node.config())) {
        auto it = f->renaming.find(v);
        if (it == f->renaming.end())
          throw InternalError("fold renaming misses variable '" + v + "'");
        args.push_back(ExtVar{it->second});
      }
      return ExtCall{CallKind::Function, pathName(t.path), std::move(args)};
    }

    stack_.push_back({g, path});
    auto kids = g.children();
    auto pos = childPositions(g);
    std::vector<ExtExp> sub;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      path.push_back(pos[i]);
      sub.push_back(translate(kids[i], path));
      path.pop_back();
    }
    stack_.pop_back();

    ExtExp body = shape(g, std::move(sub));
    if (!targets_.contains(path)) return body;
    std::string name = pathName(path);
    auto params = freeVars(g.config());
    std::vector<ExtExp> args;
    for (const auto& v : params) args.push_back(ExtVar{v});
    defs_.push_back({name, params, std::move(body)});
    return ExtCall{CallKind::Function, name, std::move(args)};
  }

  static ExtExp shape(const ConfGraph& g, std::vector<ExtExp> sub) {
    if (const auto* l = g.as<CgLeaf>()) return ExtVar{l->var.name()};
    if (const auto* c = g.as<CgCon>()) return ExtCall{CallKind::Constructor, c->con, std::move(sub)};
    if (g.as<CgUnfold>()) return sub.front();
    if (const auto* c = g.as<CgCases>()) {
      ExtCase k{c->var, {}};
      for (std::size_t i = 0; i < sub.size(); ++i) k.branches.emplace_back(c->branches[i].first, sub[i]);
      return k;
    }
    const auto& l = *g.as<CgLet>();
    ExtLet let{{}, {sub.front()}};
    for (std::size_t i = 0; i < l.bindings.size(); ++i)
      let.bindings.emplace_back(l.bindings[i].first, sub[i + 1]);
    return let;
  }

  std::set<std::vector<std::size_t>> targets_;
  std::vector<Frame> stack_;
  std::vector<ExtDef> defs_;
};

}  // namespace

std::vector<std::string> freeVars(const ExtExp& e) {
  std::vector<std::string> bound, out;
  collect(e, bound, out);
  return out;
}

std::string prettyPrint(const ExtExp& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

ExtProgram residualize(const ConfGraph& g) { return Residualizer().run(g); }

ResidualProgram residualProgram(const ConfGraph& g) { return simplify(lift(residualize(g))); }

}  // namespace mrsc
