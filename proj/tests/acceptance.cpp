// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "properties.hpp"
#include "syminfer/bounds.hpp"

using namespace syminfer;
using namespace syminfer::test;

namespace {

constexpr double kIdivLimitSecs = 60;
constexpr double kNlaLimitSecs = 300;
constexpr double kBoundsLimitSecs = 120;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double secs) {
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << secs << " s";
  return os.str();
}

struct Line {
  bool pass;
  std::string detail;
};

int failures = 0;

void print(const char* id, const char* title, const Line& l) {
  std::cout << (l.pass ? "PASS " : "FAIL ") << id << " " << title << ": " << l.detail << std::endl;
  if (!l.pass) ++failures;
}

Line criterion1() {
  auto p = load("programs/idiv.mvl");
  Solver solver(solver_config());
  RunConfig cfg;
  cfg.program_path = source_path("programs/idiv.mvl");
  auto start = Clock::now();
  RunResult full = run(cfg);
  const double secs = since(start);
  LocationEngine engine(p, "L", solver, {});
  EqtsResult r = cegir_eqts(engine, 2);
  std::vector<std::string> bad;
  const Poly expected = canonical(poly(*p, "L", "x2 * y1 - x1 + y2 + y3"));
  if (r.proved.size() != 1 || canonical(r.proved[0].eq.poly) != expected || !r.unknown.empty())
    bad.push_back("equality set is not exactly the division identity");
  const auto& final_eqs = full.report["locations"][0]["equalities"];
  const std::string want = Formula::atom(expected, CmpOp::Eq).to_string(engine.name_fn());
  if (final_eqs.size() != 1 || final_eqs[0]["relation"] != want)
    bad.push_back("final report equalities differ from " + want);

  for (const char* text : {"y1 * y2 * y3 == 0", "x1 * y3 - 12 * y1 * y3 - y2 * y3 - y3 * y3 == 0"}) {
    VerifyOutcome o = engine.verify(relation(*p, "L", text), {}, 5);
    if (o.status != Verdict::Refuted) bad.push_back(std::string(text) + " not refuted");
  }
  VerifyOutcome settle = engine.verify(relation(*p, "L", "x2 * y1 - x1 + y2 + y3 == 0"), {}, 5);
  const std::size_t at5 = engine.states(6).upto(5).size();
  const std::size_t at6 = engine.states(6).upto(6).size();
  if (settle.status != Verdict::Invariant || settle.settled_depth != 5)
    bad.push_back("invariant did not settle at depth 5");
  if (secs >= kIdivLimitSecs) bad.push_back("runtime " + fmt(secs));
  std::ostringstream os;
  os << (r.proved.empty() ? std::string("no equality") : r.proved[0].to_string(engine.name_fn()))
     << "; both injected candidates refuted; settled at depth " << settle.settled_depth << " (" << at5 << " states at 5, "
     << at6 << " at 6); full run " << fmt(secs) << " < " << kIdivLimitSecs << " s";
  for (const auto& b : bad) os << "; " << b;
  return {bad.empty(), os.str()};
}

Line criterion2() {
  auto p = load("programs/idiv.mvl");
  Solver solver(solver_config());
  LocationEngine engine(p, "L", solver, {});
  OctResult x2 = cegir_oct(engine, OctTerm{pos(*p, "L", "x2"), -1}, -10, 10);
  OctResult x1 = cegir_oct(engine, OctTerm{pos(*p, "L", "x1"), -1}, -10, 10);
  const bool ok = x2.ineq && x2.ineq->bound == -1 && x1.ineq && x1.ineq->bound == 0;
  auto show = [&](const OctResult& r) { return r.ineq ? r.ineq->to_string(engine.name_fn()) : std::string("none"); };
  return {ok, show(x2) + " (not x2 >= 2), " + show(x1)};
}

Line criterion3() {
  RunConfig cfg;
  cfg.runs = 1;
  BenchSummary s = bench(source_path("benchmarks/nla"), cfg);
  const std::vector<std::string> wanted{"cohendiv", "manna", "hard", "sqrt", "cohencu", "ps2", "ps3", "ps4"};
  std::ostringstream os;
  bool ok = true;
  for (const auto& name : wanted) {
    auto it = std::find_if(s.rows.begin(), s.rows.end(), [&](const BenchRow& r) { return r.program == name; });
    bool row_ok = it != s.rows.end() && it->correct && *it->correct && it->median_seconds < kNlaLimitSecs;
    ok = ok && row_ok;
    os << name << (row_ok ? " ok" : " FAILED");
    if (it != s.rows.end()) os << " (" << fmt(it->median_seconds) << ")";
    if (it != s.rows.end() && !it->reason.empty()) os << " [" << it->reason << "]";
    os << "; ";
  }
  os << "limit " << kNlaLimitSecs << " s each";
  return {ok, os.str()};
}

// Roots of every counter-basis element of the proved equalities.
std::vector<std::pair<Poly, BoundSolution>> counter_roots(const std::string& rel, unsigned degree,
                                                          std::vector<std::string> vars, double& secs) {
  auto p = load(rel);
  Solver solver(solver_config());
  EngineConfig cfg;
  cfg.vars = std::move(vars);
  auto start = Clock::now();
  LocationEngine engine(p, "L", solver, cfg);
  EqtsResult r = cegir_eqts(engine, degree);
  const auto names = engine.var_names();
  const VarId t = static_cast<VarId>(std::find(names.begin(), names.end(), "t") - names.begin());
  std::vector<Poly> eqs;
  for (const auto& c : r.proved) eqs.push_back(c.eq.poly);
  std::vector<std::pair<Poly, BoundSolution>> out;
  for (const Poly& e : counter_basis(eqs, t)) out.emplace_back(e, solve_counter(e, t));
  secs = since(start);
  return out;
}

// eq == c * prod (t - r) exactly, for the given roots.
bool exact_identity(const Poly& eq, VarId t, const std::vector<Poly>& roots) {
  Poly rest = eq;
  for (const auto& r : roots) {
    auto q = divide_by_linear(rest, t, r);
    if (!q) return false;
    rest = *q;
  }
  return rest.is_constant() && !rest.is_zero();
}

bool same_roots(const BoundSolution& s, std::vector<Poly> want) {
  if (s.residual || s.roots.size() != want.size()) return false;
  for (const auto& r : s.roots) {
    auto it = std::find(want.begin(), want.end(), r.value);
    if (it == want.end()) return false;
    want.erase(it);
  }
  return true;
}

Line criterion4() {
  std::ostringstream os;
  bool ok = true;
  {
    // View order: M, N, P, t.
    const Poly M = Poly::var(0), N = Poly::var(1), P = Poly::var(2);
    const std::vector<Poly> want{Poly(0), P + M + Poly(1), N - M * (P - N)};
    double secs = 0;
    auto sols = counter_roots("programs/pldi_fig2.mvl", 4, {"M", "N", "P", "t"}, secs);
    bool found = std::any_of(sols.begin(), sols.end(),
                             [&](const auto& s) { return same_roots(s.second, want) && exact_identity(s.first, 3, want); });
    ok = ok && found && secs < kBoundsLimitSecs;
    os << "nested loops: roots {0, P + M + 1, N - M*(P - N)} " << (found ? "found" : "NOT found") << " in " << fmt(secs);
  }
  {
    const Poly m = Poly::var(0);
    const std::vector<Poly> want{m + Poly(100), Poly(100)};
    double secs = 0;
    auto sols = counter_roots("programs/cav09_fig1a.mvl", 2, {"m", "t"}, secs);
    bool found = std::any_of(sols.begin(), sols.end(),
                             [&](const auto& s) { return same_roots(s.second, want) && exact_identity(s.first, 1, want); });
    ok = ok && found && secs < kBoundsLimitSecs;
    os << "; two-phase loop: roots {m + 100, 100} " << (found ? "found" : "NOT found") << " in " << fmt(secs);
  }
  os << "; limit " << kBoundsLimitSecs << " s each";
  return {ok, os.str()};
}

Line criterion5() {
  struct Named {
    const char* name;
    SuiteResult r;
  };
  std::vector<Named> suites;
  suites.push_back({"nullspace x200", nullspace_suite(200, 1)});
  suites.push_back({"cex replay", cex_suite(20, 8, 2)});
  suites.push_back({"oct vs scan x50", oct_suite(50, 3)});
  suites.push_back({"symexec x50", symexec_suite(50, 4)});
  suites.push_back({"redundancy x50", redundancy_suite(50, 5)});
  std::ostringstream os;
  bool ok = true;
  for (const auto& s : suites) {
    ok = ok && s.r.ok();
    os << s.name << " " << (s.r.ok() ? "ok" : "FAILED") << " (" << s.r.checks << " checks)";
    if (!s.r.failures.empty()) os << " [" << s.r.failures.front() << "]";
    if (&s != &suites.back()) os << "; ";
  }
  return {ok, os.str()};
}

Line criterion6() {
  namespace fs = std::filesystem;
  std::vector<std::pair<fs::path, RunConfig>> corpus;
  for (const char* dir : {"programs", "benchmarks/nla", "tests/data/trivial"}) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(source_path(dir)))
      if (e.path().extension() == ".mvl") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      RunConfig cfg;
      cfg.program_path = f.string();
      fs::path conf = fs::path(f).replace_extension(".config.json");
      if (fs::exists(conf)) {
        Json j = Json::parse(read_file(conf.string()));
        if (j.contains("degree")) cfg.degree = j["degree"].get<unsigned>();
      }
      if (f.stem() == "pldi_fig2") {
        cfg.degree = 4;
        cfg.counter = "t";
      } else if (f.stem() == "cav09_fig1a") {
        cfg.counter = "t";
      }
      corpus.emplace_back(f, cfg);
    }
  }
  std::vector<std::string> differ;
  for (const auto& [f, cfg] : corpus)
    if (run(cfg).report.dump(2) != run(cfg).report.dump(2)) differ.push_back(f.stem().string());
  std::ostringstream os;
  os << corpus.size() << " programs run twice";
  if (differ.empty()) {
    os << ", all reports byte-identical";
  } else {
    os << ", differing:";
    for (const auto& d : differ) os << " " << d;
  }
  return {differ.empty(), os.str()};
}

}  // namespace

int main() {
  try {
    print("C1", "idiv end-to-end", criterion1());
    print("C2", "spurious-bound refutation", criterion2());
    print("C3", "NLA subset", criterion3());
    print("C4", "complexity bounds", criterion4());
    print("C5", "property suites", criterion5());
    print("C6", "determinism", criterion6());
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
