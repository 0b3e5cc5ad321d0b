#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "syminfer/driver.hpp"

using namespace syminfer;

namespace {

std::pair<Int, Int> parse_range(const std::string& flag, const std::string& text) {
  auto colon = text.find(':', text.empty() ? 0 : 1);
  if (colon == std::string::npos) throw UsageError(flag + " expects lo:hi");
  Int lo, hi;
  if (lo.set_str(text.substr(0, colon), 10) != 0 || hi.set_str(text.substr(colon + 1), 10) != 0)
    throw UsageError(flag + " expects integer bounds, got '" + text + "'");
  return {lo, hi};
}

struct Flags {
  std::string oct_range;
  std::string fuzz_range;
  std::string bootstrap = "symbolic";
  std::string counter;
  std::string out;
};

void add_common(CLI::App* cmd, RunConfig& cfg, Flags& f) {
  cmd->add_option("--degree", cfg.degree, "maximum monomial degree for equalities")->capture_default_str();
  cmd->add_option("--oct-range", f.oct_range, "octagonal bound search range lo:hi (default -10:10)");
  cmd->add_option("--start-depth", cfg.start_depth, "initial symbolic execution depth")->capture_default_str();
  cmd->add_option("--max-depth", cfg.max_depth, "depth ceiling for verification")->capture_default_str();
  cmd->add_option("--solver-cmd", cfg.solver_cmd, "solver command line (env SYMINFER_SOLVER)")->capture_default_str();
  cmd->add_option("--smt-timeout-ms", cfg.smt_timeout_ms, "per-query solver timeout")->capture_default_str();
  cmd->add_option("--log-smt", cfg.log_smt, "write every solver query to this directory");
  cmd->add_flag("!--fresh-solver", cfg.reuse_solver, "start a solver process per query");
  cmd->add_option("--bootstrap", f.bootstrap, "initial states: symbolic or fuzz")
      ->check(CLI::IsMember({"symbolic", "fuzz"}))
      ->capture_default_str();
  cmd->add_option("--fuzz-range", f.fuzz_range, "input range for fuzz bootstrap lo:hi (default -300:300)");
  cmd->add_option("--oversample", cfg.oversample, "bootstrap states per term")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  cmd->add_option("--budget-secs", cfg.budget_secs, "wall-clock budget per run")->capture_default_str();
  cmd->add_option("--counter", f.counter, "counter variable for complexity bounds");
  cmd->add_option("--locations", cfg.locations, "restrict to these location labels")->delimiter(',');
  cmd->add_option("--out", f.out, "write the JSON report to this path");
  cmd->add_flag("--timings", cfg.timings, "include wall-clock timings in the JSON output");
}

void finish(RunConfig& cfg, const Flags& f) {
  if (!f.oct_range.empty()) std::tie(cfg.oct_lo, cfg.oct_hi) = parse_range("--oct-range", f.oct_range);
  if (!f.fuzz_range.empty()) std::tie(cfg.fuzz_lo, cfg.fuzz_hi) = parse_range("--fuzz-range", f.fuzz_range);
  cfg.bootstrap = f.bootstrap == "fuzz" ? Bootstrap::Fuzz : Bootstrap::Symbolic;
  if (!f.counter.empty()) cfg.counter = f.counter;
  cfg.validate();
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << '\n';
}

void print_report(const Json& report) {
  for (const auto& l : report["locations"]) {
    std::cout << "@" << l["location"].get<std::string>() << "\n";
    for (const char* key : {"equalities", "inequalities"})
      for (const auto& inv : l[key])
        std::cout << "  " << inv["relation"].get<std::string>() << "    [depth " << inv["depth"] << ", query "
                  << inv["transcript"] << "]\n";
    if (l.contains("complexity_bounds"))
      for (const auto& b : l["complexity_bounds"]) {
        std::cout << "  bounds from " << b["equality"].get<std::string>() << "\n";
        for (const auto& r : b["roots"])
          std::cout << "    " << r["root"].get<std::string>() << "  if " << r["guard"].get<std::string>() << "\n";
        if (!b["residual"].is_null()) std::cout << "    residual " << b["residual"].get<std::string>() << "\n";
      }
    for (const auto& w : l["warnings"]) std::cout << "  warning: " << w.get<std::string>() << "\n";
  }
  if (report["timeout"].get<bool>()) std::cout << "budget exhausted; results are partial\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical invariant generation by symbolic states and counterexample-guided refinement"};
  app.require_subcommand(1);

  RunConfig run_cfg;
  Flags run_flags;
  auto* run_cmd = app.add_subcommand("run", "infer invariants for one program");
  run_cmd->add_option("file", run_cfg.program_path, "program (.mvl)")->required();
  add_common(run_cmd, run_cfg, run_flags);

  RunConfig bench_cfg;
  Flags bench_flags;
  std::string bench_dir;
  auto* bench_cmd = app.add_subcommand("bench", "run every program in a directory and check expected invariants");
  bench_cmd->add_option("dir", bench_dir, "directory of .mvl files with .expected sidecars")->required();
  bench_cmd->add_option("--runs", bench_cfg.runs, "runs per program; the median time is reported")
      ->capture_default_str();
  add_common(bench_cmd, bench_cfg, bench_flags);

  if (const char* env = std::getenv("SYMINFER_SOLVER"); env && *env) {
    run_cfg.solver_cmd = env;
    bench_cfg.solver_cmd = env;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) {
      finish(run_cfg, run_flags);
      RunResult r = run(run_cfg);
      print_report(r.report);
      write_json(run_flags.out, r.report);
    } else {
      finish(bench_cfg, bench_flags);
      BenchSummary s = bench(bench_dir, bench_cfg);
      std::cout << s.table();
      write_json(bench_flags.out, s.to_json(bench_cfg.timings));
    }
  } catch (const UsageError& e) {
    std::cerr << "syminfer: " << e.what() << "\n";
    return 1;
  } catch (const LangError& e) {
    std::cerr << "syminfer: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "syminfer: internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
