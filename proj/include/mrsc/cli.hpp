#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mrsc/engine.hpp"
#include "mrsc/graphset.hpp"
#include "mrsc/lang.hpp"
#include "mrsc/residual.hpp"

namespace mrsc {

// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kEmpty = 2, kMismatch = 3 };

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct QuerySpec {
  enum class Kind { First, Last, Min, Max, Enumerate };
  Kind kind = Kind::First;
  SizeMeasure measure = SizeMeasure::AllNodes;
  std::size_t limit = 1;  // Enumerate only

  std::string name() const;
};

// first | last | min | max | min-skip-unfold | max-skip-unfold | enumerate:N
QuerySpec parseQuery(const std::string& text);

struct Selected {
  ConfGraph graph;
  std::uint64_t size;  // under the query's measure
};

// The graphs a query picks, in order. Empty when the set is empty.
std::vector<Selected> selectGraphs(const GraphSet& gs, const QuerySpec& q);

// ---------------------------------------------------------------------------
// Random ground values for the free variables of an expression.

class ValueGenerator {
public:
  static constexpr int kMaxDepth = 8;

  // Infers monomorphic types for the program and the expression. Types with
  // no finite value get an extra nullary constructor whose name the program
  // does not use.
  ValueGenerator(const Program& p, const Exp& target);

  Env sample(std::mt19937_64& rng) const;
  Value generate(const std::string& var, std::mt19937_64& rng) const;

  // Constructor names (with arities) that can inhabit the type of `var`.
  std::vector<std::pair<std::string, std::size_t>> constructorsOf(const std::string& var) const;

private:
  struct ConInfo {
    std::string name;
    std::vector<std::size_t> fields;  // type ids
  };
  Value generateType(std::size_t type, int depth, std::mt19937_64& rng) const;
  std::map<std::size_t, std::size_t> ranks(const std::set<std::size_t>& types) const;

  std::vector<std::string> vars_;
  std::map<std::string, std::size_t> varType_;
  std::map<std::size_t, std::vector<ConInfo>> inhabitants_;
  std::map<std::size_t, std::size_t> rank_;
};

// ---------------------------------------------------------------------------
// Commands. Each writes to `out`/`err` and returns an exit code.

struct LoadedSource {
  Program program;
  Exp target;
};

// Parses `file`; `expression` overrides the file's `expression:` line.
LoadedSource loadSource(const std::filesystem::path& file,
                        const std::optional<std::string>& expression);

struct RunOptions {
  std::filesystem::path file;
  std::optional<std::string> expression;
  QuerySpec query;
  std::optional<std::filesystem::path> dot;
};
int runQuery(const RunOptions& o, std::ostream& out, std::ostream& err);

struct StatsRow {
  std::string name;
  std::uint64_t first = 0, last = 0, min = 0, max = 0;
  std::optional<GraphCount> count;
};
StatsRow computeStats(const std::string& name, const LoadedSource& src);
int runStats(const std::filesystem::path& dir, bool csv, std::ostream& out, std::ostream& err);

struct CheckOptions {
  std::filesystem::path file;
  std::size_t samples = 100;
  std::uint64_t fuel = 100'000;
  std::uint64_t seed = 1;
};

struct CheckOutcome {
  std::string query;
  std::size_t trials = 0;
  std::size_t agreed = 0;
  std::size_t skipped = 0;  // out of fuel on either side
  std::size_t mismatches = 0;
};

// Evaluates the original and `r` on `o.samples` random environments.
CheckOutcome compareResidual(const LoadedSource& src, const ResidualProgram& r,
                             const ValueGenerator& gen, const CheckOptions& o, std::string query,
                             std::ostream* log = nullptr);

// Checks the first, last, min and min-skip-unfold residuals.
std::vector<CheckOutcome> checkSource(const LoadedSource& src, const CheckOptions& o,
                                      std::ostream* log = nullptr);
int runCheck(const CheckOptions& o, std::ostream& out, std::ostream& err);

struct EvalOptions {
  std::filesystem::path file;
  std::optional<std::string> expression;
  std::vector<std::string> env;  // VAR=VALUE
  std::uint64_t fuel = 100'000;
};
int runEval(const EvalOptions& o, std::ostream& out, std::ostream& err);

}  // namespace mrsc
