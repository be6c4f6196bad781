#pragma once

#include <random>
#include <string>
#include <vector>

#include "mrsc/cli.hpp"
#include "mrsc/drive.hpp"
#include "mrsc/engine.hpp"
#include "mrsc/graphset.hpp"
#include "mrsc/lang.hpp"
#include "mrsc/residual.hpp"

namespace testing {

inline const std::vector<std::string> kCorpus = {
    "doubleapp", "eqboolsym", "evenodd", "expgrowth", "idnat", "kmp", "lenintersperse", "takelength"};

inline std::string corpusPath(const std::string& name) {
  return std::string(CORPUS_DIR) + "/" + name + ".scp";
}

inline mrsc::LoadedSource corpus(const std::string& name) {
  return mrsc::loadSource(corpusPath(name), std::nullopt);
}

inline const char* const kAppend =
    "append(Nil, ys) = ys;\n"
    "append(Cons(x, xs), ys) = Cons(x, append(xs, ys));\n";

inline const char* const kExpGrowth =
    "g(Nil, y) = y;\n"
    "g(Cons(x, xs), y) = f(g(xs, y));\n"
    "f(w) = B(w, w);\n";

inline const char* const kSubstring =
    "not(True) = False;\n"
    "not(False) = True;\n"
    "eqBool(True, b) = b;\n"
    "eqBool(False, b) = not(b);\n"
    "match(Nil, ss, op, os) = True;\n"
    "match(Cons(p, pp), ss, op, os) = matchCons(ss, p, pp, op, os);\n"
    "matchCons(Nil, p, pp, op, os) = False;\n"
    "matchCons(Cons(s, ss), p, pp, op, os) = matchHdEq(eqBool(p, s), pp, ss, op, os);\n"
    "matchHdEq(True, pp, ss, op, os) = match(pp, ss, op, os);\n"
    "matchHdEq(False, pp, ss, op, os) = next(os, op);\n"
    "next(Nil, op) = False;\n"
    "next(Cons(s, ss), op) = match(op, ss, op, ss);\n"
    "isSublist(p, s) = match(p, s, p, s);\n";

inline mrsc::Program program(const std::string& text) { return mrsc::parseProgram(text).program; }
inline mrsc::Exp exp(const std::string& text) { return mrsc::parseExp(text); }

// Random first-order terms over a small alphabet.
class TermGen {
public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  mrsc::Exp term(int depth) {
    static const char* vars[] = {"x", "y", "z", "u"};
    static const std::pair<const char*, int> cons[] = {{"A", 0}, {"S", 1}, {"P", 2}};
    static const std::pair<const char*, int> funs[] = {{"f", 1}, {"g", 2}};
    int pick = depth <= 0 ? 0 : below(4);
    if (pick == 0) return mrsc::Exp::var(vars[below(4)]);
    std::vector<mrsc::Exp> args;
    if (pick <= 2) {
      auto [name, arity] = cons[below(3)];
      for (int i = 0; i < arity; ++i) args.push_back(term(depth - 1));
      return mrsc::Exp::con(name, std::move(args));
    }
    auto [name, arity] = funs[below(2)];
    for (int i = 0; i < arity; ++i) args.push_back(term(depth - 1));
    return mrsc::Exp::fun(name, std::move(args));
  }

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
};

// A Boolean list Cons(b1, ... Nil()).
inline mrsc::Value boolList(const std::vector<bool>& bits) {
  mrsc::Value v{"Nil", {}};
  for (auto it = bits.rbegin(); it != bits.rend(); ++it)
    v = mrsc::Value{"Cons", {mrsc::Value{*it ? "True" : "False", {}}, v}};
  return v;
}

inline std::vector<mrsc::ConfGraph> allGraphs(const mrsc::GraphSet& gs) {
  return mrsc::enumerateGraphs(gs);
}

}  // namespace testing
