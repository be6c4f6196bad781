#include "mrsc/lang.hpp"

#include <sstream>

namespace mrsc {

namespace {

void print(std::ostream& os, const Exp& e) {
  os << e.name();
  if (e.isVar()) return;
  os << '(';
  for (std::size_t i = 0; i < e.arity(); ++i) {
    if (i) os << ", ";
    print(os, e.arg(i));
  }
  os << ')';
}

void printList(std::ostream& os, const std::vector<std::string>& names, bool leadingComma) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i || leadingComma) os << ", ";
    os << names[i];
  }
}

}  // namespace

std::string prettyPrint(const Exp& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string prettyPrint(const Pattern& p) { return prettyPrint(p.toExp()); }

std::string prettyPrint(const Program& p) {
  std::ostringstream os;
  for (const auto& d : p.defs()) {
    if (const auto* f = std::get_if<FunDef>(&d)) {
      os << f->name << '(';
      printList(os, f->params, false);
      os << ") = ";
      print(os, f->body);
      os << ";\n";
      continue;
    }
    const auto& m = std::get<MatchDef>(d);
    for (const auto& c : m.clauses) {
      os << m.name << '(' << prettyPrint(c.pattern);
      printList(os, c.params, true);
      os << ") = ";
      print(os, c.body);
      os << ";\n";
    }
  }
  return os.str();
}

std::string prettyPrint(const Program& p, const Exp& target) {
  return prettyPrint(p) + "expression: " + prettyPrint(target) + "\n";
}

std::string prettyPrint(const Value& v) { return prettyPrint(v.toExp()); }

}  // namespace mrsc
