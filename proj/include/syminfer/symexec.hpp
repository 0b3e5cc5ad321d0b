#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "syminfer/formula.hpp"
#include "syminfer/lang.hpp"

namespace syminfer {

// Depth-bounded symbolic execution. Symbolic values are polynomials over the
// input symbols X1..Xn (VarId i is the symbol of parameter i).

struct PathConstraint {
  Formula cond;
  bool charged = false;  // true when the branch forked and cost one depth unit
  int line = 0;          // source line of the branch or assume
};

struct SymState {
  std::string loc;
  // Indexed by canonical variable; nullopt is the undefined value.
  std::vector<std::optional<Poly>> env;
  std::vector<PathConstraint> pc;
  int depth = 0;
  // Charged branch decisions along the path, then '#' and the visit index.
  std::string path;
  // A model of pc over the inputs; absent when some feasibility query along
  // the path came back unknown.
  std::optional<std::vector<Int>> witness;

  Formula path_condition() const;
  bool pc_verified() const { return witness.has_value(); }
};

enum class Feasibility { Sat, Unsat, Unknown };

struct FeasibilityResult {
  Feasibility status = Feasibility::Unknown;
  std::vector<Int> model;  // over the inputs when Sat
};

class FeasibilityOracle {
 public:
  virtual ~FeasibilityOracle() = default;
  // `f` mentions only input symbols.
  virtual FeasibilityResult check(const Formula& f) = 0;
};

struct ExecOptions {
  // Per-path bound on executed statements; exhausted paths are dropped and
  // flagged in the resulting set.
  long max_steps_per_path = 200'000;
};

// Resumable execution point of a path cut off by the depth bound.
struct PathCursor {
  struct Frame {
    const std::vector<Stmt>* block;
    std::size_t index;
  };
  std::vector<Frame> frames;
  std::vector<std::optional<Poly>> env;
  std::vector<PathConstraint> pc;
  int depth = 0;
  std::string path;
  int visits = 0;
  long steps = 0;
  std::optional<std::vector<Int>> witness;
};

struct SymStateSet {
  std::shared_ptr<const Program> program;
  std::string loc;
  int k = 0;
  std::vector<SymState> states;
  std::vector<PathCursor> frontier;
  bool truncated = false;
  std::size_t feasibility_queries = 0;

  // States with depth <= k, in discovery order.
  std::vector<const SymState*> upto(int k) const;
};

SymStateSet exec_to_depth(std::shared_ptr<const Program> program, const std::string& loc, int k,
                          FeasibilityOracle& feas, const ExecOptions& opts = {});

// Deepens `set` to bound `k` by resuming its frontier. New states are appended
// after the existing ones.
SymStateSet extend(const SymStateSet& set, int k, FeasibilityOracle& feas, const ExecOptions& opts = {});

// Symbolic evaluation of an expression under a symbolic environment.
Poly sym_eval(const AExpr& e, const std::vector<std::optional<Poly>>& env);

// Display name of input symbol i ("X1", "X2", ...).
std::string input_name(VarId i);

// Stable 64-bit hash of the program text, used to key cached state sets.
std::string program_hash(const Program& p);

}  // namespace syminfer
