#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mrsc/lang.hpp"

namespace mrsc {

using Branch = std::pair<Pattern, Exp>;
using Binding = std::pair<std::string, Exp>;

// ---------------------------------------------------------------------------
// Single-result driving

struct DsrNone {
  friend bool operator==(const DsrNone&, const DsrNone&) = default;
};
struct DsrCon {
  std::string con;
  std::vector<Exp> args;
  friend bool operator==(const DsrCon&, const DsrCon&) = default;
};
struct DsrUnfold {
  Exp exp;
  friend bool operator==(const DsrUnfold&, const DsrUnfold&) = default;
};
struct DsrCases {
  std::string var;
  std::vector<Branch> branches;
  friend bool operator==(const DsrCases&, const DsrCases&) = default;
};

using DriveStepResult = std::variant<DsrNone, DsrCon, DsrUnfold, DsrCases>;

// ---------------------------------------------------------------------------
// Multi-result driving

struct MdsrLeaf {
  Exp var;
  friend bool operator==(const MdsrLeaf&, const MdsrLeaf&) = default;
};
struct MdsrCon {
  std::string con;
  std::vector<Exp> args;
  friend bool operator==(const MdsrCon&, const MdsrCon&) = default;
};
struct MdsrUnfold {
  Exp exp;
  friend bool operator==(const MdsrUnfold&, const MdsrUnfold&) = default;
};
struct MdsrCases {
  std::string var;
  std::vector<Branch> branches;
  friend bool operator==(const MdsrCases&, const MdsrCases&) = default;
};
struct MdsrLet {
  std::vector<Binding> bindings;
  Exp body;
  friend bool operator==(const MdsrLet&, const MdsrLet&) = default;
};

using MultiDriveStepResult = std::variant<MdsrLeaf, MdsrCon, MdsrUnfold, MdsrCases, MdsrLet>;

const char* stepKindName(const MultiDriveStepResult& r);

// Produces variable names that are unique within one supercompilation run.
// A name is derived from a base name by stripping trailing digits and
// appending a per-base counter: `xs` -> `xs0`, `xs1`, ...
class FreshSource {
public:
  FreshSource() = default;
  FreshSource(const Program& p, const Exp& initial);

  std::string fresh(std::string_view base);
  void reserve(const std::string& name) { taken_.insert(name); }
  bool isTaken(const std::string& name) const { return taken_.contains(name); }

private:
  std::set<std::string> taken_;
  std::map<std::string, unsigned> counters_;
};

// An expression with exactly one hole, addressed by an argument path.
class ExpContext {
public:
  ExpContext(Exp skeleton, std::vector<std::size_t> path);

  // g(•, e1, ..., en)
  static ExpContext firstArgOf(const Exp& call);

  Exp fill(const Exp& e) const;
  Exp holeContents(const Exp& filled) const;
  ExpContext substituted(const Subst& s) const;

private:
  Exp skeleton_;
  std::vector<std::size_t> path_;
};

class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

DriveStepResult driveStep(const Program& p, const Exp& e, FreshSource& fresh);

// Positive information propagation for one clause when the scrutinee is the
// variable `x`: returns the freshened pattern and the instantiated body.
Branch propagate(const std::string& x, const Clause& clause, std::span<const Exp> args,
                 FreshSource& fresh);

std::vector<MultiDriveStepResult> multiDriveSteps(const Program& p, const Exp& e,
                                                  FreshSource& fresh);

std::vector<MultiDriveStepResult> mdsrMap(const ExpContext& ctx,
                                          const std::vector<MultiDriveStepResult>& inner);

std::vector<Exp> mdsrSubExps(const MultiDriveStepResult& r);

}  // namespace mrsc
