#include <sstream>

#include "mrsc/graphset.hpp"

namespace mrsc {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string renamingLabel(const Renaming& r) {
  std::string out;
  for (const auto& [from, to] : r) {
    if (!out.empty()) out += ", ";
    out += from + "->" + to;
  }
  return out;
}

// Nodes are numbered in pre-order; `path` holds the ids of the ancestor
// configurations so fold edges can point back to them.
class DotWriter {
public:
  std::string finish() { return "digraph G {\n  node [shape=box];\n" + body_.str() + "}\n"; }

  void gs(const GraphSet& g, std::vector<std::size_t>& path) {
    std::size_t id = next_++;
    if (g.isNone()) {
      node(id, "NONE", "style=dotted");
      return;
    }
    if (const auto* f = g.asFold()) {
      node(id, prettyPrint(f->conf.config), "");
      foldEdge(id, path, f->back, f->renaming);
      return;
    }
    const GsBuild& b = *g.asBuild();
    node(id, prettyPrint(b.config), "");
    path.push_back(id);
    for (const auto& alt : b.alternatives) {
      std::size_t altId = next_++;
      node(altId, stepKindName(alt.step), "shape=ellipse");
      body_ << "  n" << id << " -> n" << altId << " [style=bold];\n";
      for (const auto& c : alt.children) {
        body_ << "  n" << altId << " -> n" << next_ << ";\n";
        gs(c, path);
      }
    }
    path.pop_back();
  }

  void cg(const ConfGraph& g, std::vector<std::size_t>& path) {
    std::size_t id = next_++;
    std::string label = prettyPrint(g.config());
    if (const auto* f = g.as<CgFold>()) {
      node(id, label, "");
      foldEdge(id, path, f->back, f->renaming);
      return;
    }
    std::vector<std::string> edgeLabels;
    if (const auto* c = g.as<CgCases>()) {
      for (const auto& b : c->branches) edgeLabels.push_back(c->var + " = " + prettyPrint(b.first));
    } else if (const auto* l = g.as<CgLet>()) {
      edgeLabels.push_back("in");
      for (const auto& b : l->bindings) edgeLabels.push_back(b.first);
    } else if (g.as<CgUnfold>()) {
      edgeLabels.push_back("unfold");
    }
    node(id, label, "");
    path.push_back(id);
    auto kids = g.children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      body_ << "  n" << id << " -> n" << next_;
      if (i < edgeLabels.size()) body_ << " [label=\"" << escape(edgeLabels[i]) << "\"]";
      body_ << ";\n";
      cg(kids[i], path);
    }
    path.pop_back();
  }

private:
  void node(std::size_t id, const std::string& label, const std::string& attrs) {
    body_ << "  n" << id << " [label=\"" << escape(label) << "\"";
    if (!attrs.empty()) body_ << ", " << attrs;
    body_ << "];\n";
  }

  void foldEdge(std::size_t id, const std::vector<std::size_t>& path, std::size_t back,
                const Renaming& r) {
    if (back == 0 || back > path.size()) return;
    body_ << "  n" << id << " -> n" << path[path.size() - back] << " [style=dashed, label=\""
          << escape(renamingLabel(r)) << "\"];\n";
  }

  std::ostringstream body_;
  std::size_t next_ = 0;
};

}  // namespace

std::string toDot(const GraphSet& gs) {
  DotWriter w;
  std::vector<std::size_t> path;
  w.gs(gs, path);
  return w.finish();
}

std::string toDot(const ConfGraph& g) {
  DotWriter w;
  std::vector<std::size_t> path;
  w.cg(g, path);
  return w.finish();
}

}  // namespace mrsc
