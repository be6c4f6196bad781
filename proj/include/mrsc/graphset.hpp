#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrsc/drive.hpp"
#include "mrsc/lang.hpp"

namespace mrsc {

// A configuration paired with the multi-driving step taken from it.
struct MConf {
  MultiDriveStepResult step;
  Exp config;
};

// ---------------------------------------------------------------------------
// Lazy graph: a tree-shaped description of a whole set of configuration graphs.

class GraphSet;

struct GsNone {};

struct GsFold {
  MConf conf;  // the step is a synthetic leaf; only `conf.config` is meaningful
  std::size_t back;
  Renaming renaming;  // ancestor variable -> current variable
};

struct GsAlternative {
  MultiDriveStepResult step;
  std::vector<GraphSet> children;
};

struct GsBuild {
  Exp config;
  std::vector<GsAlternative> alternatives;
};

class GraphSet {
public:
  using Node = std::variant<GsNone, GsFold, GsBuild>;

  GraphSet();  // GSNone
  static GraphSet none() { return GraphSet(); }
  static GraphSet fold(Exp config, std::size_t back, Renaming renaming);
  static GraphSet build(Exp config, std::vector<GsAlternative> alternatives);

  bool isNone() const { return std::holds_alternative<GsNone>(*node_); }
  const GsFold* asFold() const { return std::get_if<GsFold>(node_.get()); }
  const GsBuild* asBuild() const { return std::get_if<GsBuild>(node_.get()); }

  // Number of GraphSet nodes in the tree.
  std::size_t nodeCount() const;

  friend bool operator==(const GraphSet& a, const GraphSet& b);

private:
  explicit GraphSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// A single configuration graph. Every node remembers its configuration,
// which residualization needs for fold targets.

class ConfGraph;

struct CgLeaf {
  Exp var;
};
struct CgCon {
  std::string con;
  std::vector<ConfGraph> children;
};
struct CgUnfold {
  std::vector<ConfGraph> child;  // exactly one element
};
struct CgCases {
  std::string var;
  std::vector<std::pair<Pattern, ConfGraph>> branches;
};
struct CgFold {
  std::size_t back;
  Renaming renaming;
};
struct CgLet {
  std::vector<std::pair<std::string, ConfGraph>> bindings;
  std::vector<ConfGraph> body;  // exactly one element
};

class ConfGraph {
public:
  using Shape = std::variant<CgLeaf, CgCon, CgUnfold, CgCases, CgFold, CgLet>;

  ConfGraph(Exp config, Shape shape);

  const Exp& config() const { return node_->config; }
  const Shape& shape() const { return node_->shape; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&node_->shape);
  }

  // Children in mdsrSubExps order (let body first, then bindings).
  std::vector<ConfGraph> children() const;

  friend bool operator==(const ConfGraph& a, const ConfGraph& b);

private:
  struct Node {
    Exp config;
    Shape shape;
  };
  std::shared_ptr<const Node> node_;
};

const ConfGraph& unfoldChild(const CgUnfold& u);
const ConfGraph& letBody(const CgLet& l);

ConfGraph buildGraph(const MConf& conf, std::vector<ConfGraph> children);

// ---------------------------------------------------------------------------
// Expansion and queries

// Lazily expands a GraphSet. Alternatives come in order; within an
// alternative the rightmost child varies fastest.
class GraphEnumerator {
public:
  explicit GraphEnumerator(GraphSet gs);
  ~GraphEnumerator();
  GraphEnumerator(GraphEnumerator&&) noexcept;
  GraphEnumerator& operator=(GraphEnumerator&&) noexcept;

  std::optional<ConfGraph> next();

private:
  struct State;
  std::unique_ptr<State> state_;
};

std::vector<ConfGraph> enumerateGraphs(const GraphSet& gs,
                                       std::size_t limit = static_cast<std::size_t>(-1));

using GraphCount = boost::multiprecision::cpp_int;
GraphCount countGraphs(const GraphSet& gs);

enum class SizeMeasure { AllNodes, SkipUnfold };

std::uint64_t graphSize(const ConfGraph& g, SizeMeasure m);

// Optional probe: incremented once per GraphSet node a query touches.
struct QueryCounter {
  std::size_t visited = 0;
};

std::optional<ConfGraph> firstGraph(const GraphSet& gs, QueryCounter* counter = nullptr);
std::optional<ConfGraph> lastGraph(const GraphSet& gs, QueryCounter* counter = nullptr);

enum class Extremum { Min, Max };

struct SizedGraphSet {
  std::uint64_t size;
  GraphSet pruned;  // describes exactly one graph
};

std::optional<SizedGraphSet> minMaxSizeGraph(const GraphSet& gs, SizeMeasure m, Extremum mode,
                                             QueryCounter* counter = nullptr);

std::string toDot(const GraphSet& gs);
std::string toDot(const ConfGraph& g);

}  // namespace mrsc
