#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mrsc/cli.hpp"

namespace mrsc {

std::string QuerySpec::name() const {
  const char* suffix = measure == SizeMeasure::SkipUnfold ? "-skip-unfold" : "";
  switch (kind) {
    case Kind::First: return "first";
    case Kind::Last: return "last";
    case Kind::Min: return std::string("min") + suffix;
    case Kind::Max: return std::string("max") + suffix;
    case Kind::Enumerate: return "enumerate:" + std::to_string(limit);
  }
  return "?";
}

QuerySpec parseQuery(const std::string& text) {
  using K = QuerySpec::Kind;
  if (text == "first") return {K::First};
  if (text == "last") return {K::Last};
  if (text == "min") return {K::Min};
  if (text == "max") return {K::Max};
  if (text == "min-skip-unfold") return {K::Min, SizeMeasure::SkipUnfold};
  if (text == "max-skip-unfold") return {K::Max, SizeMeasure::SkipUnfold};
  const std::string prefix = "enumerate:";
  if (text.starts_with(prefix)) {
    std::string n = text.substr(prefix.size());
    std::size_t limit = 0;
    bool digits = !n.empty() && std::all_of(n.begin(), n.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (digits) {
      try {
        limit = std::stoull(n);
      } catch (const std::out_of_range&) {
        digits = false;
      }
    }
    if (!digits || limit == 0) throw UsageError("enumerate limit must be a positive integer: '" + n + "'");
    return {K::Enumerate, SizeMeasure::AllNodes, limit};
  }
  throw UsageError("unknown query '" + text +
                   "' (expected first, last, min, max, min-skip-unfold, max-skip-unfold or "
                   "enumerate:N)");
}

std::vector<Selected> selectGraphs(const GraphSet& gs, const QuerySpec& q) {
  using K = QuerySpec::Kind;
  std::vector<Selected> out;
  auto add = [&](const ConfGraph& g) { out.push_back({g, graphSize(g, q.measure)}); };
  switch (q.kind) {
    case K::First:
      if (auto g = firstGraph(gs)) add(*g);
      break;
    case K::Last:
      if (auto g = lastGraph(gs)) add(*g);
      break;
    case K::Min:
    case K::Max:
      if (auto r = minMaxSizeGraph(gs, q.measure, q.kind == K::Min ? Extremum::Min : Extremum::Max))
        out.push_back({enumerateGraphs(r->pruned, 1).front(), r->size});
      break;
    case K::Enumerate:
      for (auto& g : enumerateGraphs(gs, q.limit)) add(g);
      break;
  }
  return out;
}

LoadedSource loadSource(const std::filesystem::path& file,
                        const std::optional<std::string>& expression) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read '" + file.string() + "'");
  std::stringstream text;
  text << in.rdbuf();
  ParsedSource src = parseProgram(text.str());
  if (expression) {
    Exp e = parseExp(*expression);
    checkProgram(src.program, &e);
    return {std::move(src.program), std::move(e)};
  }
  if (!src.target)
    throw UsageError("'" + file.string() + "' has no 'expression:' line; pass one with -e");
  return {std::move(src.program), std::move(*src.target)};
}

namespace {

// Runs `body`, mapping input errors to diagnostics and exit code 1.
template <class F>
int guarded(const std::filesystem::path& file, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << file.string() << ':' << e.line() << ':' << e.column() << ": error: " << e.what() << '\n';
  } catch (const WellFormednessError& e) {
    err << file.string() << ": error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const BudgetExceeded& e) {
    err << file.string() << ": error: " << e.what() << '\n';
  }
  return kUsage;
}

const char* measureName(SizeMeasure m) {
  return m == SizeMeasure::SkipUnfold ? "nodes without unfoldings" : "nodes";
}

}  // namespace

int runQuery(const RunOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(o.file, err, [&] {
    LoadedSource src = loadSource(o.file, o.expression);
    GraphSet gs = mrScp(src.program, src.target);
    auto selected = selectGraphs(gs, o.query);
    if (selected.empty()) {
      err << o.file.string() << ": the set of results is empty\n";
      return int(kEmpty);
    }
    std::ofstream dot;
    if (o.dot) {
      dot.open(*o.dot);
      if (!dot) throw UsageError("cannot write '" + o.dot->string() + "'");
    }
    for (std::size_t i = 0; i < selected.size(); ++i) {
      if (i) out << '\n';
      const auto& s = selected[i];
      out << "-- " << o.query.name();
      if (o.query.kind == QuerySpec::Kind::Enumerate) out << " #" << i + 1;
      out << ": graph size " << s.size << " (" << measureName(o.query.measure) << ")\n";
      ResidualProgram r = residualProgram(s.graph);
      out << prettyPrint(r.program, r.main);
      if (dot) dot << toDot(s.graph);
    }
    return int(kOk);
  });
}

StatsRow computeStats(const std::string& name, const LoadedSource& src) {
  GraphSet gs = mrScp(src.program, src.target);
  auto first = firstGraph(gs);
  auto last = lastGraph(gs);
  auto min = minMaxSizeGraph(gs, SizeMeasure::AllNodes, Extremum::Min);
  auto max = minMaxSizeGraph(gs, SizeMeasure::AllNodes, Extremum::Max);
  if (!first || !last || !min || !max) throw UsageError(name + ": the set of results is empty");
  return {name,
          graphSize(*first, SizeMeasure::AllNodes),
          graphSize(*last, SizeMeasure::AllNodes),
          min->size,
          max->size,
          countGraphs(gs)};
}

int runStats(const std::filesystem::path& dir, bool csv, std::ostream& out, std::ostream& err) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.path().extension() == ".scp") files.push_back(entry.path());
  if (ec) {
    err << "error: cannot list '" << dir.string() << "': " << ec.message() << '\n';
    return kUsage;
  }
  std::sort(files.begin(), files.end());

  std::vector<StatsRow> rows;
  int status = kOk;
  for (const auto& f : files) {
    int rc = guarded(f, err, [&] {
      rows.push_back(computeStats(f.stem().string(), loadSource(f, std::nullopt)));
      return int(kOk);
    });
    if (rc != kOk) status = rc;
  }

  auto count = [](const StatsRow& r) { return r.count ? r.count->str() : std::string("-"); };
  if (csv) {
    out << "example,first,last,min,max,graphs\n";
    for (const auto& r : rows)
      out << r.name << ',' << r.first << ',' << r.last << ',' << r.min << ',' << r.max << ','
          << count(r) << '\n';
    return status;
  }
  std::size_t width = 7;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  out << std::left << std::setw(int(width)) << "example" << std::right << std::setw(7) << "first"
      << std::setw(7) << "last" << std::setw(7) << "min" << std::setw(7) << "max" << "  graphs\n";
  for (const auto& r : rows)
    out << std::left << std::setw(int(width)) << r.name << std::right << std::setw(7) << r.first
        << std::setw(7) << r.last << std::setw(7) << r.min << std::setw(7) << r.max << "  "
        << count(r) << '\n';
  return status;
}

namespace {

std::string showEnv(const Env& env) {
  std::string s;
  for (const auto& [k, v] : env) s += (s.empty() ? "" : ", ") + k + " = " + prettyPrint(v);
  return "{" + s + "}";
}

std::string showResult(const EvalResult& r) {
  if (r.ok()) return prettyPrint(r.value());
  if (r.outOfFuel()) return "out of fuel";
  return "stuck (" + std::get<Stuck>(r.outcome).reason + ")";
}

}  // namespace

CheckOutcome compareResidual(const LoadedSource& src, const ResidualProgram& r,
                             const ValueGenerator& gen, const CheckOptions& o, std::string query,
                             std::ostream* log) {
  CheckOutcome oc{std::move(query)};
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < o.samples; ++i) {
    Env env = gen.sample(rng);
    ++oc.trials;
    EvalResult want = evalCBN(src.program, src.target, env, o.fuel);
    EvalResult got = evalCBN(r.program, r.main, env, o.fuel);
    if (want.outOfFuel() || got.outOfFuel()) {
      ++oc.skipped;
    } else if (want.ok() && got.ok() && want.value() == got.value()) {
      ++oc.agreed;
    } else {
      ++oc.mismatches;
      if (log)
        *log << "  mismatch in " << oc.query << " for " << showEnv(env) << ": original gives "
             << showResult(want) << ", residual gives " << showResult(got) << '\n';
    }
  }
  return oc;
}

std::vector<CheckOutcome> checkSource(const LoadedSource& src, const CheckOptions& o,
                                      std::ostream* log) {
  using K = QuerySpec::Kind;
  const QuerySpec queries[] = {{K::First}, {K::Last}, {K::Min}, {K::Min, SizeMeasure::SkipUnfold}};
  GraphSet gs = mrScp(src.program, src.target);
  ValueGenerator gen(src.program, src.target);
  std::vector<CheckOutcome> outcomes;
  for (const auto& q : queries) {
    auto selected = selectGraphs(gs, q);
    if (selected.empty()) throw UsageError("the set of results is empty");
    outcomes.push_back(
        compareResidual(src, residualProgram(selected.front().graph), gen, o, q.name(), log));
  }
  return outcomes;
}

int runCheck(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(o.file, err, [&] {
    LoadedSource src = loadSource(o.file, std::nullopt);
    out << "check " << o.file.string() << " (seed " << o.seed << ", fuel " << o.fuel << ")\n";
    auto outcomes = checkSource(src, o, &out);
    bool failed = false;
    for (const auto& oc : outcomes) {
      out << "  " << std::left << std::setw(16) << oc.query << std::right;
      if (oc.trials == 0) {
        out << "0 trials, nothing to compare\n";
        continue;
      }
      out << oc.trials << " trials, " << oc.agreed << " agreed, " << oc.skipped
          << " skipped (out of fuel), " << oc.mismatches << " mismatches\n";
      failed = failed || oc.mismatches > 0;
    }
    out << (failed ? "FAIL" : "PASS") << '\n';
    return int(failed ? kMismatch : kOk);
  });
}

int runEval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(o.file, err, [&] {
    LoadedSource src = loadSource(o.file, o.expression);
    Env env;
    for (const auto& binding : o.env) {
      auto eq = binding.find('=');
      if (eq == std::string::npos) throw UsageError("expected VAR=VALUE, got '" + binding + "'");
      auto value = toValue(parseExp(binding.substr(eq + 1)));
      if (!value) throw UsageError("value of '" + binding.substr(0, eq) + "' is not a constructor term");
      env[binding.substr(0, eq)] = *value;
    }
    EvalResult r = evalCBN(src.program, src.target, env, o.fuel);
    out << showResult(r) << "\nsteps: " << r.steps << '\n';
    return int(r.ok() ? kOk : kUsage);
  });
}

}  // namespace mrsc
