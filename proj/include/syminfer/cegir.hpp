#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "syminfer/cstates.hpp"
#include "syminfer/infer.hpp"
#include "syminfer/smt.hpp"
#include "syminfer/symexec.hpp"

namespace syminfer {

// Wall-clock budget shared by the phases of a run.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(double seconds);
  bool expired() const;

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

enum class Verdict { Invariant, Refuted, Unknown };
std::string to_string(Verdict v);

struct VerifyOutcome {
  Verdict status = Verdict::Unknown;
  std::vector<ConcreteState> cex;        // nonempty iff refuted
  std::vector<std::vector<Int>> cex_inputs;  // inputs reproducing each cex
  int settled_depth = -1;
  std::uint64_t transcript = 0;  // solver query that decided the outcome
  bool ceiling = false;          // stopped by the depth ceiling
  std::string diagnostic;
};

struct EngineConfig {
  int start_depth = 10;
  int max_depth = 20;
  ExecOptions exec;
  // Restricts the location variables (kept in canonical order); empty means all.
  std::vector<std::string> vars;
};

// Verification context for one (program, location). Symbolic states are
// computed once, deepened on demand and shared by every check. Properties are
// written over location-local variable positions.
class LocationEngine {
 public:
  LocationEngine(std::shared_ptr<const Program> program, std::string loc, Solver& solver, EngineConfig cfg = {});

  const Program& program() const { return *program_; }
  const std::string& loc() const { return loc_; }
  // The location as seen by this engine (variables possibly restricted).
  const LocationInfo& info() const { return info_; }
  std::size_t num_vars() const { return info_.vars.size(); }
  std::vector<std::string> var_names() const;
  NameFn name_fn() const;
  const EngineConfig& config() const { return cfg_; }
  Solver& solver() { return solver_; }

  // The state set deepened to at least k.
  const SymStateSet& states(int k);
  std::size_t verify_calls() const { return verify_calls_; }
  double exec_seconds() const { return exec_seconds_; }

  // Adaptive-depth check of `cand`; `block` holds excluded states over
  // positions (its symbols are ignored).
  VerifyOutcome verify(const Formula& cand, const BlockSet& block, std::optional<int> k0 = std::nullopt);

  // SMT symbol of a position.
  std::string smt_name(VarId pos) const;
  // Whether `rhs` follows from `lhs` (both over positions), without states.
  SmtVerdict implication(const Formula& lhs, const Formula& rhs);

 private:
  std::shared_ptr<const Program> program_;
  std::string loc_;
  LocationInfo info_;
  Solver& solver_;
  EngineConfig cfg_;
  std::unique_ptr<SolverFeasibility> feas_;
  std::optional<SymStateSet> set_;
  std::vector<Formula> encoded_;
  std::size_t verify_calls_ = 0;
  double exec_seconds_ = 0;

  Formula to_vc(const Formula& f) const;
};

struct Candidate {
  enum class Kind { Eq, Ineq };
  Kind kind = Kind::Eq;
  EqInvariant eq;
  Inequality ineq;
  std::optional<bool> is_inv;
  VerifyOutcome outcome;

  static Candidate equality(EqInvariant e);
  static Candidate inequality(Inequality i);
  Formula formula() const;
  std::string to_string(const NameFn& name) const;
};

enum class Bootstrap { Symbolic, Fuzz };

struct CegirOptions {
  Bootstrap bootstrap = Bootstrap::Symbolic;
  Int fuzz_lo = -300;
  Int fuzz_hi = 300;
  std::uint64_t seed = 0;
  double oversample = 1.5;
  std::size_t term_cap = 500;
  const Deadline* deadline = nullptr;
};

struct EqtsResult {
  std::vector<Candidate> proved;
  std::vector<Candidate> unknown;
  std::size_t refuted = 0;
  std::size_t iterations = 0;
  std::size_t terms = 0;
  StateSample sample;
  bool timeout = false;
  double infer_seconds = 0;
};

EqtsResult cegir_eqts(LocationEngine& engine, unsigned degree, const CegirOptions& opts = {});

struct OctResult {
  std::optional<Inequality> ineq;
  VerifyOutcome proof;  // outcome that proved the returned bound
  std::size_t verify_calls = 0;
  bool saw_unknown = false;
};

OctResult cegir_oct(LocationEngine& engine, const OctTerm& term, const Int& min_v, const Int& max_v,
                    const BlockSet& block = {});

// Greedy removal of candidates implied by the remaining ones.
std::vector<Candidate> remove_redundant(LocationEngine& engine, std::vector<Candidate> invs);

}  // namespace syminfer
