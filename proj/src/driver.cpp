#include "syminfer/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "syminfer/bounds.hpp"

namespace syminfer {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void RunConfig::validate() const {
  if (degree < 1 || degree > 8) throw UsageError("--degree must be in [1, 8]");
  if (oct_lo > oct_hi) throw UsageError("--oct-range: lower bound exceeds upper bound");
  if (start_depth < 0) throw UsageError("--start-depth must be non-negative");
  if (max_depth < start_depth) throw UsageError("--max-depth must be at least --start-depth");
  if (smt_timeout_ms <= 0) throw UsageError("--smt-timeout-ms must be positive");
  if (runs < 1) throw UsageError("--runs must be at least 1");
  if (fuzz_lo > fuzz_hi) throw UsageError("--fuzz-range: lower bound exceeds upper bound");
  if (oversample < 1.0) throw UsageError("--oversample must be at least 1");
  if (budget_secs <= 0) throw UsageError("--budget-secs must be positive");
  if (split_command(solver_cmd).empty()) throw UsageError("--solver-cmd is empty");
}

Json RunConfig::to_json() const {
  Json j;
  j["program"] = program_path;
  j["locations"] = locations;
  j["degree"] = degree;
  j["oct_range"] = {oct_lo.get_str(), oct_hi.get_str()};
  j["start_depth"] = start_depth;
  j["max_depth"] = max_depth;
  j["solver_cmd"] = solver_cmd;
  j["smt_timeout_ms"] = smt_timeout_ms;
  j["reuse_solver"] = reuse_solver;
  j["seed"] = seed;
  j["runs"] = runs;
  j["bootstrap"] = bootstrap == Bootstrap::Symbolic ? "symbolic" : "fuzz";
  j["fuzz_range"] = {fuzz_lo.get_str(), fuzz_hi.get_str()};
  j["oversample"] = oversample;
  j["budget_secs"] = budget_secs;
  j["counter"] = counter ? Json(*counter) : Json(nullptr);
  return j;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Json invariant_json(const Candidate& c, const NameFn& name) {
  Json j;
  j["relation"] = c.to_string(name);
  j["kind"] = c.kind == Candidate::Kind::Eq ? "eq" : "oct";
  j["depth"] = c.outcome.settled_depth;
  j["transcript"] = c.outcome.transcript;
  return j;
}

std::vector<std::string> location_vars(const Program& p, const std::string& loc, const RunConfig& cfg) {
  if (!cfg.counter) return {};
  std::vector<std::string> vars = p.params;
  if (std::find(vars.begin(), vars.end(), *cfg.counter) == vars.end()) vars.push_back(*cfg.counter);
  const auto& info = p.location(loc);
  int id = p.var_index(*cfg.counter);
  if (id < 0 || std::find(info.vars.begin(), info.vars.end(), id) == info.vars.end())
    throw UsageError("counter '" + *cfg.counter + "' is not assigned at location " + loc);
  return vars;
}

Json bounds_json(const EqtsResult& eq, LocationEngine& engine, const std::string& counter, std::uint64_t seed,
                 std::vector<std::string>& warnings) {
  const auto names = engine.var_names();
  const NameFn name = engine.name_fn();
  const auto t = static_cast<VarId>(std::find(names.begin(), names.end(), counter) - names.begin());
  std::vector<VarId> inputs;
  for (VarId i = 0; i < names.size(); ++i)
    if (i != t && engine.program().var_index(names[i]) < static_cast<int>(engine.program().params.size()))
      inputs.push_back(i);
  std::vector<Poly> eqs;
  for (const auto& c : eq.proved) eqs.push_back(c.eq.poly);
  Json out = Json::array();
  for (const Poly& p : counter_basis(eqs, t)) {
    BoundSolution sol = solve_counter(p, t, {seed});
    attach_guards(sol, t, inputs, eq.sample.points());
    Json j;
    j["equality"] = Formula::atom(p, CmpOp::Eq).to_string(name);
    Json roots = Json::array();
    for (const auto& r : sol.roots) {
      Json rj;
      rj["root"] = counter + " == " + r.value.to_string(name);
      rj["guard"] = r.guard ? Json(r.guard->to_string(name)) : Json("unguarded");
      rj["support"] = r.support;
      roots.push_back(rj);
    }
    j["roots"] = roots;
    j["residual"] = sol.residual ? Json(sol.residual->to_string(name)) : Json(nullptr);
    j["guards_ambiguous"] = sol.ambiguous;
    if (sol.residual) warnings.push_back("bounds: unfactored residual " + sol.residual->to_string(name));
    out.push_back(j);
  }
  return out;
}

}  // namespace

RunResult run(const RunConfig& cfg) { return run_source(read_file(cfg.program_path), cfg); }

RunResult run_source(const std::string& source, const RunConfig& cfg) {
  cfg.validate();
  auto program = std::make_shared<const Program>(parse(source));
  std::vector<std::string> locs = cfg.locations.empty() ? program->location_order : cfg.locations;
  for (const auto& l : locs)
    if (!program->locations.count(l)) throw UsageError("unknown location '" + l + "'");

  SolverConfig sc;
  sc.command = split_command(cfg.solver_cmd);
  sc.timeout_ms = cfg.smt_timeout_ms;
  sc.log_dir = cfg.log_smt;
  sc.reuse_process = cfg.reuse_solver;
  Solver solver(sc);
  Deadline deadline(cfg.budget_secs);
  const auto run_start = Clock::now();

  RunResult result;
  Json report;
  report["schema"] = kReportSchema;
  report["program"] = program->name;
  report["config"] = cfg.to_json();
  Json loc_reports = Json::array();

  for (const auto& loc : locs) {
    EngineConfig ec;
    ec.start_depth = cfg.start_depth;
    ec.max_depth = cfg.max_depth;
    ec.vars = location_vars(*program, loc, cfg);
    LocationEngine engine(program, loc, solver, ec);
    const NameFn name = engine.name_fn();
    std::vector<std::string> warnings;
    const double solver_before = solver.seconds();

    CegirOptions opts;
    opts.bootstrap = cfg.bootstrap;
    opts.fuzz_lo = cfg.fuzz_lo;
    opts.fuzz_hi = cfg.fuzz_hi;
    opts.seed = cfg.seed;
    opts.oversample = cfg.oversample;
    opts.deadline = &deadline;
    EqtsResult eq;
    try {
      eq = cegir_eqts(engine, cfg.degree, opts);
    } catch (const TermCapError& e) {
      throw UsageError(e.what());
    }
    if (!eq.sample.diagnostic.empty()) warnings.push_back(eq.sample.diagnostic);
    if (eq.sample.exhausted && eq.sample.states.size() < eq.terms)
      warnings.push_back("bootstrap found only " + std::to_string(eq.sample.states.size()) + " states for " +
                         std::to_string(eq.terms) + " terms");
    for (const auto& c : eq.unknown) warnings.push_back("unknown: " + c.to_string(name) + " (" + c.outcome.diagnostic + ")");

    std::vector<Candidate> all = eq.proved;
    std::size_t oct_unknown = 0;
    bool timeout = eq.timeout;
    if (!eq.sample.states.empty()) {
      for (const auto& term : oct_terms(engine.num_vars())) {
        if (deadline.expired()) {
          timeout = true;
          break;
        }
        OctResult r = cegir_oct(engine, term, cfg.oct_lo, cfg.oct_hi);
        if (r.saw_unknown) ++oct_unknown;
        if (!r.ineq) continue;
        Candidate c = Candidate::inequality(*r.ineq);
        c.is_inv = true;
        c.outcome = r.proof;
        all.push_back(std::move(c));
      }
    }
    if (oct_unknown) warnings.push_back(std::to_string(oct_unknown) + " octagonal searches met unknown verdicts");
    for (const auto& c : all)
      if (c.outcome.ceiling) warnings.push_back("depth ceiling reached for " + c.to_string(name));
    const std::size_t before = all.size();
    std::vector<Candidate> kept = remove_redundant(engine, std::move(all));
    if (timeout) warnings.push_back("budget exhausted; results are partial");
    if (engine.states(cfg.start_depth).truncated) warnings.push_back("symbolic execution truncated a path");

    Json lj;
    lj["location"] = loc;
    lj["vars"] = engine.var_names();
    Json eqs = Json::array();
    Json ineqs = Json::array();
    unsigned found_degree = 0;
    LocationResult lr{loc, engine.var_names(), {}};
    for (const auto& c : kept) {
      (c.kind == Candidate::Kind::Eq ? eqs : ineqs).push_back(invariant_json(c, name));
      if (c.kind == Candidate::Kind::Eq) found_degree = std::max(found_degree, c.eq.poly.degree());
      lr.found.push_back(c.formula());
    }
    lj["equalities"] = eqs;
    lj["inequalities"] = ineqs;
    lj["redundant_removed"] = before - kept.size();
    lj["refuted_candidates"] = eq.refuted;
    lj["cegir_iterations"] = eq.iterations;
    Json vtd;
    vtd["vars"] = engine.num_vars();
    vtd["terms"] = eq.terms;
    vtd["degree"] = cfg.degree;
    vtd["found_degree"] = found_degree;
    lj["vtd"] = vtd;
    Json states;
    states["bootstrap"] = eq.sample.states.size();
    states["symbolic"] = engine.states(cfg.start_depth).upto(cfg.start_depth).size();
    lj["states"] = states;
    if (cfg.counter) lj["complexity_bounds"] = bounds_json(eq, engine, *cfg.counter, cfg.seed, warnings);
    lj["warnings"] = warnings;
    if (cfg.timings) {
      Json tj;
      tj["symexec"] = engine.exec_seconds();
      tj["inference"] = eq.infer_seconds;
      tj["solving"] = solver.seconds() - solver_before;
      lj["timings"] = tj;
    }
    loc_reports.push_back(lj);
    result.locations.push_back(std::move(lr));
    result.timeout = result.timeout || timeout;
  }
  report["locations"] = loc_reports;
  report["timeout"] = result.timeout;
  Json sj;
  sj["queries"] = solver.queries();
  sj["cache_hits"] = solver.cache_hits();
  report["solver"] = sj;
  if (cfg.timings) report["wall_seconds"] = since(run_start);
  result.report = std::move(report);
  return result;
}

std::vector<Expectation> parse_expectations(const std::string& text) {
  std::vector<Expectation> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    Expectation e;
    e.line = n;
    if (line[0] == '@') {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw UsageError("expected-invariant line " + std::to_string(n) + ": missing ':' after label");
      e.label = trim(line.substr(1, colon - 1));
      line = trim(line.substr(colon + 1));
    }
    e.relation = line;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ExpectationCheck> check_expectations(const RunResult& result, const std::vector<Expectation>& exps,
                                                 const RunConfig& cfg) {
  SolverConfig sc;
  sc.command = split_command(cfg.solver_cmd);
  sc.timeout_ms = std::max(cfg.smt_timeout_ms, 30000);
  Solver solver(sc);
  std::vector<ExpectationCheck> out;
  for (const auto& e : exps) {
    ExpectationCheck c{e, false, 0, ""};
    const LocationResult* lr = nullptr;
    if (e.label) {
      for (const auto& l : result.locations)
        if (l.loc == *e.label) lr = &l;
    } else if (result.locations.size() == 1) {
      lr = &result.locations.front();
    }
    if (!lr) {
      c.reason = e.label ? "no results for location " + *e.label : "unlabeled expectation with several locations";
      out.push_back(std::move(c));
      continue;
    }
    try {
      auto resolve = [&](const std::string& n) -> VarId {
        auto it = std::find(lr->vars.begin(), lr->vars.end(), n);
        if (it == lr->vars.end()) throw UsageError("variable '" + n + "' is not available at " + lr->loc);
        return static_cast<VarId>(it - lr->vars.begin());
      };
      Formula expected = to_formula(parse_bexpr(e.relation), [&](const AExpr& a) { return to_poly(a, resolve); });
      auto names = [&](VarId v) { return "v!" + lr->vars.at(v); };
      SmtVerdict v = solver.check_implication(Formula::conj(lr->found), expected, names);
      c.transcript = v.transcript;
      c.holds = v.unsat();
      if (v.sat()) {
        std::string model;
        for (const auto& [sym, val] : v.model) model += " " + lr->vars.at(sym) + "=" + val.get_str();
        c.reason = "not implied; counterexample:" + model;
      } else if (v.unknown()) {
        c.reason = "implication check " + v.reason;
      }
    } catch (const std::exception& ex) {
      c.reason = ex.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

Json BenchSummary::to_json(bool timings) const {
  Json j;
  j["schema"] = kBenchSchema;
  Json rs = Json::array();
  for (const auto& r : rows) {
    Json rj;
    rj["program"] = r.program;
    rj["locations"] = r.locations;
    rj["vtd"] = {r.vars, r.terms, r.degree};
    rj["invariants"] = r.invariants;
    if (timings) rj["median_seconds"] = r.median_seconds;
    rj["correct"] = r.correct ? Json(*r.correct) : Json(nullptr);
    rj["reason"] = r.reason;
    Json cs = Json::array();
    for (const auto& c : r.checks) {
      Json cj;
      cj["location"] = c.expected.label ? Json(*c.expected.label) : Json(nullptr);
      cj["relation"] = c.expected.relation;
      cj["holds"] = c.holds;
      cj["transcript"] = c.transcript;
      cj["reason"] = c.reason;
      cs.push_back(cj);
    }
    rj["checks"] = cs;
    rs.push_back(rj);
  }
  j["rows"] = rs;
  return j;
}

std::string BenchSummary::table() const {
  std::ostringstream os;
  os << std::left << std::setw(16) << "program" << std::setw(6) << "locs" << std::setw(12) << "V,T,D" << std::setw(6)
     << "invs" << std::setw(10) << "time(s)" << "correct\n";
  for (const auto& r : rows) {
    std::string vtd = std::to_string(r.vars) + "," + std::to_string(r.terms) + "," + std::to_string(r.degree);
    std::ostringstream t;
    t << std::fixed << std::setprecision(2) << r.median_seconds;
    os << std::setw(16) << r.program << std::setw(6) << r.locations << std::setw(12) << vtd << std::setw(6)
       << r.invariants << std::setw(10) << t.str() << (r.correct ? (*r.correct ? "\u2713" : "\u2717") : "-");
    if (!r.reason.empty()) os << "  " << r.reason;
    os << '\n';
  }
  return os.str();
}

BenchSummary bench(const std::string& dir, const RunConfig& overrides) {
  if (!fs::is_directory(dir)) throw UsageError(dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".mvl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  BenchSummary summary;
  for (const auto& f : files) {
    BenchRow row;
    row.program = f.stem().string();
    RunConfig cfg = overrides;
    cfg.program_path = f.string();
    fs::path conf = fs::path(f).replace_extension(".config.json");
    if (fs::exists(conf)) {
      Json cj = Json::parse(read_file(conf.string()));
      if (cj.contains("degree")) cfg.degree = cj["degree"].get<unsigned>();
      if (cj.contains("counter")) cfg.counter = cj["counter"].get<std::string>();
      if (cj.contains("locations")) cfg.locations = cj["locations"].get<std::vector<std::string>>();
    }
    std::vector<double> times;
    RunResult last;
    try {
      for (int i = 0; i < cfg.runs; ++i) {
        auto start = Clock::now();
        last = run(cfg);
        times.push_back(since(start));
      }
    } catch (const std::exception& e) {
      row.correct = false;
      row.reason = e.what();
      summary.rows.push_back(std::move(row));
      continue;
    }
    std::sort(times.begin(), times.end());
    row.median_seconds = times[times.size() / 2];
    row.locations = last.locations.size();
    for (const auto& l : last.report["locations"]) {
      row.vars = std::max<std::size_t>(row.vars, l["vtd"]["vars"].get<std::size_t>());
      row.terms = std::max<std::size_t>(row.terms, l["vtd"]["terms"].get<std::size_t>());
      row.invariants += l["equalities"].size() + l["inequalities"].size();
    }
    row.degree = cfg.degree;
    fs::path side = fs::path(f).replace_extension(".expected");
    if (fs::exists(side)) {
      row.checks = check_expectations(last, parse_expectations(read_file(side.string())), cfg);
      bool ok = std::all_of(row.checks.begin(), row.checks.end(), [](const auto& c) { return c.holds; });
      if (last.timeout) {
        ok = false;
        row.reason = "budget exhausted";
      }
      for (const auto& c : row.checks)
        if (!c.holds) row.reason += (row.reason.empty() ? "" : "; ") + c.expected.relation + ": " + c.reason;
      row.correct = ok;
    }
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

}  // namespace syminfer
