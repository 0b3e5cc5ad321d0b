#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "syminfer/cegir.hpp"

namespace syminfer {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "syminfer-report/1";
inline constexpr const char* kBenchSchema = "syminfer-bench/1";

// Invalid configuration or input file; reported as a usage error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string program_path;
  std::vector<std::string> locations;  // empty: every marked location
  unsigned degree = 2;
  Int oct_lo = -10;
  Int oct_hi = 10;
  int start_depth = 10;
  int max_depth = 20;
  std::string solver_cmd = "z3 -in";
  int smt_timeout_ms = 5000;
  std::string log_smt;
  bool reuse_solver = true;
  std::uint64_t seed = 0;
  int runs = 11;
  Bootstrap bootstrap = Bootstrap::Symbolic;
  Int fuzz_lo = -300;
  Int fuzz_hi = 300;
  double oversample = 1.5;
  double budget_secs = 300;
  std::optional<std::string> counter;
  bool timings = false;

  // Throws UsageError on out-of-range values.
  void validate() const;
  Json to_json() const;
};

// Everything `bench` needs to re-check a location's results.
struct LocationResult {
  std::string loc;
  std::vector<std::string> vars;
  std::vector<Formula> found;  // over positions of `vars`
};

struct RunResult {
  Json report;
  std::vector<LocationResult> locations;
  bool timeout = false;
};

RunResult run(const RunConfig& cfg);
RunResult run_source(const std::string& source, const RunConfig& cfg);

// One expected relation from a sidecar file.
struct Expectation {
  std::optional<std::string> label;
  std::string relation;
  int line = 0;
};

// Sidecar format: one relation per line, optional "@Label:" prefix, '#'
// starts a comment.
std::vector<Expectation> parse_expectations(const std::string& text);

struct ExpectationCheck {
  Expectation expected;
  bool holds = false;
  std::uint64_t transcript = 0;
  std::string reason;
};

// Checks each expectation by implication from the found invariants of its
// location (the only location when unlabeled and unique).
std::vector<ExpectationCheck> check_expectations(const RunResult& result, const std::vector<Expectation>& exps,
                                                 const RunConfig& cfg);

struct BenchRow {
  std::string program;
  std::size_t locations = 0;
  std::size_t vars = 0;
  std::size_t terms = 0;
  unsigned degree = 0;
  std::size_t invariants = 0;
  double median_seconds = 0;
  std::optional<bool> correct;  // unset without a sidecar
  std::string reason;
  std::vector<ExpectationCheck> checks;
};

struct BenchSummary {
  std::vector<BenchRow> rows;
  Json to_json(bool timings) const;
  std::string table() const;
};

BenchSummary bench(const std::string& dir, const RunConfig& overrides);

std::string read_file(const std::string& path);

}  // namespace syminfer
