#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "syminfer/formula.hpp"
#include "syminfer/lang.hpp"
#include "syminfer/smt.hpp"
#include "syminfer/symexec.hpp"

namespace syminfer {

// Concrete L-states with the input vector that produced each of them.
struct StateSample {
  std::vector<ConcreteState> states;
  std::vector<std::vector<Int>> inputs;  // provenance, parallel to states
  BlockSet block;                        // input points used
  bool exhausted = false;                // fewer than n states were available
  std::string diagnostic;

  // Adds the state unless an equal one is present. Returns true when added.
  bool add(ConcreteState s, std::vector<Int> input);
  std::vector<std::vector<Int>> points() const;

 private:
  std::set<ConcreteState> index_;  // rebuilt when out of sync with states
};

// Evaluates a symbolic state's bindings of the view's variables at `inputs`.
ConcreteState concretize(const SymState& s, const LocationInfo& view, std::span<const Int> inputs);

// Restricts a state over the full variable list of a location to `view`.
ConcreteState project(const ConcreteState& s, const LocationInfo& full, const LocationInfo& view);

struct GenOptions {
  std::uint64_t seed = 0;
  // Phase 2 gives up after this many solver calls per requested state.
  int attempts_per_state = 4;
};

// Model-and-block state generation over the symbolic states of `set` with
// depth <= d. States range over the variables of `view`.
StateSample gen_states(const Program& p, const LocationInfo& view, const SymStateSet& set, int d, std::size_t n,
                       Solver& solver, const GenOptions& opts = {});

// Random inputs in [lo, hi] run through the interpreter.
StateSample fuzz_states(const Program& p, const LocationInfo& view, std::size_t n, const Int& lo, const Int& hi,
                        std::uint64_t seed, std::size_t max_runs = 0);

void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<ConcreteState>& states);

}  // namespace syminfer
