#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "syminfer/formula.hpp"
#include "syminfer/symexec.hpp"

namespace syminfer {

// SMT-LIB v2 (QF_NIA) client over a solver subprocess.

class SmtError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SmtVerdict {
  enum class Status { Sat, Unsat, Unknown };
  Status status = Status::Unknown;
  std::map<VarId, Int> model;  // total over the declared symbols when Sat
  std::string reason;          // "timeout" or "incomplete" for Unknown
  std::uint64_t transcript = 0;

  bool sat() const { return status == Status::Sat; }
  bool unsat() const { return status == Status::Unsat; }
  bool unknown() const { return status == Status::Unknown; }
};

std::string to_string(SmtVerdict::Status s);

struct SolverConfig {
  std::vector<std::string> command{"z3", "-in"};
  int timeout_ms = 5000;
  // When non-empty, every query is written to <log_dir>/<id>.smt2.
  std::string log_dir;
  // Keep one solver process alive and issue (reset) between queries instead of
  // spawning a process per query. Each query still sees a fresh context.
  bool reuse_process = true;
  bool cache = true;
};

// Splits a command line on whitespace ("z3 -in" -> {"z3", "-in"}).
std::vector<std::string> split_command(const std::string& cmd);

// Maps symbol ids to SMT-LIB symbols. Names must be unique.
using SymbolNames = std::function<std::string(VarId)>;

// Renders a formula as a complete query script (declarations, assertion,
// check-sat). Symbols are declared in increasing id order.
std::string smt_script(const Formula& f, const SymbolNames& names);
std::string smt_term(const Poly& p, const SymbolNames& names);

class Solver {
 public:
  explicit Solver(SolverConfig cfg = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  SmtVerdict check_sat(const Formula& f, const SymbolNames& names);
  // Checks lhs /\ not rhs; Unsat means the implication is valid.
  SmtVerdict check_implication(const Formula& lhs, const Formula& rhs, const SymbolNames& names);

  const SolverConfig& config() const { return cfg_; }
  std::uint64_t queries() const { return next_id_ - 1; }
  std::uint64_t cache_hits() const { return cache_hits_; }
  // Wall-clock time spent waiting on the solver.
  double seconds() const { return seconds_; }

 private:
  struct Process;
  SolverConfig cfg_;
  std::unique_ptr<Process> proc_;
  std::unordered_map<std::string, SmtVerdict> cache_;
  std::uint64_t next_id_ = 1;
  std::uint64_t cache_hits_ = 0;
  double seconds_ = 0;

  SmtVerdict run(const std::string& script, const std::vector<VarId>& symbols, const SymbolNames& names);
  void log(std::uint64_t id, const std::string& script, const SmtVerdict& v) const;
};

// Feasibility oracle for symbolic execution backed by a solver; symbol i is
// the input X(i+1).
class SolverFeasibility : public FeasibilityOracle {
 public:
  SolverFeasibility(Solver& solver, std::size_t num_inputs) : solver_(solver), n_(num_inputs) {}
  FeasibilityResult check(const Formula& f) override;

 private:
  Solver& solver_;
  std::size_t n_;
};

// Symbol layout for formulas that mix inputs and program variables: ids
// [0, n) are the inputs, ids n + i are canonical variable i.
struct VcSymbols {
  const Program* program;
  VarId num_inputs() const { return static_cast<VarId>(program->params.size()); }
  VarId var(int canonical) const { return num_inputs() + static_cast<VarId>(canonical); }
  std::string smt_name(VarId id) const;
  std::string display_name(VarId id) const;
};

std::string input_smt_name(VarId i);

// s.pc /\ (var(i) = env(i)) for every defined variable in `vars`.
Formula encode_state(const SymState& s, const std::vector<int>& vars, const VcSymbols& syms);

}  // namespace syminfer
