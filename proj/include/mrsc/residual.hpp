#pragma once

#include <memory>
#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "mrsc/drive.hpp"
#include "mrsc/graphset.hpp"
#include "mrsc/lang.hpp"

namespace mrsc {

// ---------------------------------------------------------------------------
// Residual language: core expressions plus case and let.

class ExtExp;

struct ExtVar {
  std::string name;
};
struct ExtCall {
  CallKind kind;
  std::string name;
  std::vector<ExtExp> args;
};
struct ExtCase {
  std::string scrutinee;
  std::vector<std::pair<Pattern, ExtExp>> branches;
};
struct ExtLet {
  std::vector<std::pair<std::string, ExtExp>> bindings;
  std::vector<ExtExp> body;  // exactly one element
};

class ExtExp {
public:
  using Node = std::variant<ExtVar, ExtCall, ExtCase, ExtLet>;

  template <class T>
    requires(!std::is_same_v<std::decay_t<T>, ExtExp> && std::is_constructible_v<Node, T>)
  ExtExp(T&& n) : node_(std::make_shared<const Node>(std::forward<T>(n))) {}

  const Node& node() const { return *node_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }

private:
  std::shared_ptr<const Node> node_;
};

const ExtExp& letBody(const ExtLet& l);

// Free variables in first-occurrence order.
std::vector<std::string> freeVars(const ExtExp& e);
std::string prettyPrint(const ExtExp& e);

struct ExtDef {
  std::string name;
  std::vector<std::string> params;
  ExtExp body;
};

struct ExtProgram {
  std::vector<ExtDef> defs;
  ExtExp main;
};

// Translates one configuration graph. Every fold target becomes a definition
// named after its path from the root, deepest step first: `f_` for the root,
// `f_0_1` for the first child of the second child.
ExtProgram residualize(const ConfGraph& g);

struct LiftedProgram {
  Program program;
  Exp main;
  std::set<std::string> letFunctions;  // generated from let expressions
};

// Replaces every case and let by a call of a new top-level function.
LiftedProgram lift(const ExtProgram& ep);

struct ResidualProgram {
  Program program;
  Exp main;
};

// Inlines trivial let functions, merges duplicate definitions and drops
// unreachable ones, until nothing changes.
ResidualProgram simplify(const LiftedProgram& lp);

ResidualProgram residualProgram(const ConfGraph& g);

// Equality up to a bijective renaming of functions and of each definition's
// parameters. Free variables of the main expressions must agree literally.
bool alphaEquivalent(const Program& p, const Exp& mainP, const Program& q, const Exp& mainQ);

}  // namespace mrsc
