#include <iostream>

#include <CLI11.hpp>

#include "mrsc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multi-result supercompiler for a small first-order functional language"};
  app.require_subcommand(1);

  mrsc::RunOptions run;
  std::string query = "min";
  std::string dot;
  auto* runCmd = app.add_subcommand("run", "Supercompile a program and residualize selected results");
  runCmd->add_option("file", run.file, "Source file")->required();
  runCmd->add_option("-e,--expression", run.expression, "Expression to supercompile");
  runCmd->add_option("-q,--query", query,
                     "first|last|min|max|min-skip-unfold|max-skip-unfold|enumerate:N")
      ->capture_default_str();
  runCmd->add_option("--dot", dot, "Write the selected graphs in DOT format");

  std::string statsDir;
  bool csv = false;
  auto* statsCmd = app.add_subcommand("stats", "Graph-size statistics for every .scp file in a directory");
  statsCmd->add_option("dir", statsDir, "Directory of examples")->required();
  statsCmd->add_flag("--csv", csv, "Comma-separated output");

  mrsc::CheckOptions check;
  auto* checkCmd = app.add_subcommand("check", "Compare residual programs with the original on random inputs");
  checkCmd->add_option("file", check.file, "Source file")->required();
  checkCmd->add_option("--samples", check.samples, "Random environments per query")->capture_default_str();
  checkCmd->add_option("--fuel", check.fuel, "Evaluation step budget")->capture_default_str();
  checkCmd->add_option("--seed", check.seed, "Random seed")->capture_default_str();

  mrsc::EvalOptions eval;
  auto* evalCmd = app.add_subcommand("eval", "Evaluate an expression with the reference interpreter");
  evalCmd->add_option("file", eval.file, "Source file")->required();
  evalCmd->add_option("-e,--expression", eval.expression, "Expression to evaluate");
  evalCmd->add_option("--env", eval.env, "Variable binding VAR=VALUE");
  evalCmd->add_option("--fuel", eval.fuel, "Evaluation step budget")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : mrsc::kUsage;
  }

  if (*runCmd) {
    try {
      run.query = mrsc::parseQuery(query);
    } catch (const mrsc::UsageError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return mrsc::kUsage;
    }
    if (!dot.empty()) run.dot = dot;
    return mrsc::runQuery(run, std::cout, std::cerr);
  }
  if (*statsCmd) return mrsc::runStats(statsDir, csv, std::cout, std::cerr);
  if (*checkCmd) return mrsc::runCheck(check, std::cout, std::cerr);
  return mrsc::runEval(eval, std::cout, std::cerr);
}
