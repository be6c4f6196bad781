#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace mrsc {

enum class CallKind { Constructor, Function };

// Immutable expression of the object language: a variable or a call of a
// constructor / function. Copies share structure.
class Exp {
public:
  Exp();  // the variable named "_"; mostly useful as a placeholder

  static Exp var(std::string name);
  static Exp call(CallKind kind, std::string name, std::vector<Exp> args);
  static Exp con(std::string name, std::vector<Exp> args = {}) {
    return call(CallKind::Constructor, std::move(name), std::move(args));
  }
  static Exp fun(std::string name, std::vector<Exp> args = {}) {
    return call(CallKind::Function, std::move(name), std::move(args));
  }

  bool isVar() const { return node_->isVar; }
  bool isCall() const { return !node_->isVar; }
  bool isCon() const { return isCall() && node_->kind == CallKind::Constructor; }
  bool isFun() const { return isCall() && node_->kind == CallKind::Function; }

  // Variable name for variables, callee name for calls.
  const std::string& name() const { return node_->name; }
  CallKind kind() const { return node_->kind; }
  std::span<const Exp> args() const { return node_->args; }
  const Exp& arg(std::size_t i) const { return node_->args.at(i); }
  std::size_t arity() const { return node_->args.size(); }

  // Number of variable and call nodes.
  std::size_t size() const;

  bool sameNode(const Exp& other) const { return node_ == other.node_; }

  friend bool operator==(const Exp& a, const Exp& b);
  friend bool operator!=(const Exp& a, const Exp& b) { return !(a == b); }

private:
  struct Node {
    bool isVar = true;
    CallKind kind = CallKind::Function;
    std::string name;
    std::vector<Exp> args;
  };
  explicit Exp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Pattern {
  std::string con;
  std::vector<std::string> vars;

  Exp toExp() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct FunDef {
  std::string name;
  std::vector<std::string> params;
  Exp body;
};

struct Clause {
  Pattern pattern;
  std::vector<std::string> params;  // the parameters after the pattern
  Exp body;
};

struct MatchDef {
  std::string name;
  std::vector<Clause> clauses;

  const Clause* clauseFor(std::string_view con) const;
  std::size_t arity() const {
    return clauses.empty() ? 1 : clauses.front().params.size() + 1;
  }
};

using Def = std::variant<FunDef, MatchDef>;

const std::string& defName(const Def& d);
std::size_t defArity(const Def& d);

class Program {
public:
  Program() = default;
  explicit Program(std::vector<Def> defs);

  const std::vector<Def>& defs() const { return defs_; }
  const Def* find(std::string_view name) const;
  bool empty() const { return defs_.empty(); }

private:
  std::vector<Def> defs_;
  std::unordered_map<std::string, std::size_t> index_;
};

using Subst = std::map<std::string, Exp>;
using Renaming = std::map<std::string, std::string>;

struct ParsedSource {
  Program program;
  std::optional<Exp> target;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// Raised for programs that parse but violate a static rule (arity, overlap,
// exhaustiveness, naming, scoping). `subject()` names the offender.
class WellFormednessError : public std::runtime_error {
public:
  WellFormednessError(const std::string& msg, std::string subject);
  const std::string& subject() const { return subject_; }

private:
  std::string subject_;
};

ParsedSource parseProgram(std::string_view text);
Exp parseExp(std::string_view text);

// Static checks. The optional expression is checked against the program too.
void checkProgram(const Program& p, const Exp* target = nullptr);

std::string prettyPrint(const Exp& e);
std::string prettyPrint(const Pattern& p);
std::string prettyPrint(const Program& p);
std::string prettyPrint(const Program& p, const Exp& target);

Exp substitute(const Exp& e, const Subst& s);
Exp rename(const Exp& e, const Renaming& r);

std::vector<std::string> freeVars(const Exp& e);
// Appends the variables of `e` not yet in `out` (first-occurrence order).
void collectVars(const Exp& e, std::vector<std::string>& out);
std::size_t countOccurrences(const Exp& e, std::string_view var);

// The injective renaming of `ancestor`'s variables turning it into `current`.
std::optional<Renaming> findRenaming(const Exp& ancestor, const Exp& current);

// Like findRenaming but without injectivity: the variable-to-variable
// substitution turning `general` into `specific`, if any. Distinct variables
// of `general` may map to the same variable of `specific`.
std::optional<Renaming> matchVariables(const Exp& general, const Exp& specific);

// Every variable name appearing anywhere in the program.
std::vector<std::string> programVars(const Program& p);

// ---------------------------------------------------------------------------
// Reference interpreter

struct Value {
  std::string con;
  std::vector<Value> args;

  Exp toExp() const;
  friend bool operator==(const Value&, const Value&) = default;
};

std::string prettyPrint(const Value& v);
std::optional<Value> toValue(const Exp& e);

using Env = std::map<std::string, Value>;

struct OutOfFuel {};
struct Stuck {
  std::string reason;
};

struct EvalResult {
  std::variant<Value, OutOfFuel, Stuck> outcome;
  std::uint64_t steps = 0;  // function unfoldings + clause selections

  bool ok() const { return std::holds_alternative<Value>(outcome); }
  bool outOfFuel() const { return std::holds_alternative<OutOfFuel>(outcome); }
  bool stuck() const { return std::holds_alternative<Stuck>(outcome); }
  const Value& value() const { return std::get<Value>(outcome); }
};

EvalResult evalCBN(const Program& p, const Exp& e, const Env& env, std::uint64_t fuel);

}  // namespace mrsc
