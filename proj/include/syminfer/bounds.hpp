#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "syminfer/formula.hpp"
#include "syminfer/poly.hpp"

namespace syminfer {

// Closed-form values of a counter variable recovered from an equality.

struct BoundRoot {
  Poly value;                  // root of the equality in t, free of t
  std::optional<Formula> guard;  // heuristic condition selecting this root
  std::size_t support = 0;     // states whose counter equals only this root
};

struct BoundSolution {
  std::vector<BoundRoot> roots;
  // Factor still containing t after all linear factors were divided out.
  std::optional<Poly> residual;
  bool ambiguous = false;  // guard inference could not separate the roots
};

struct SolveOptions {
  std::uint64_t seed = 0;
  int sample_lo = -8;
  int sample_hi = 8;
  unsigned max_root_degree = 2;
};

// Finds every factor (t - r) of eq with r a polynomial of degree <= 2 in the
// other variables, confirmed by exact division. Throws std::invalid_argument
// when eq does not mention t.
BoundSolution solve_counter(const Poly& eq, VarId t, const SolveOptions& opts = {});

// Re-expresses the span of `eqs` in reduced echelon form with monomials free of
// t ordered first, so that combinations in which every term mentions t appear
// as separate basis elements. Elements not mentioning t are dropped.
std::vector<Poly> counter_basis(const std::vector<Poly>& eqs, VarId t);

// Integer roots of a univariate polynomial given by coefficients c_0..c_d.
// The zero polynomial has no reported roots.
std::vector<Int> integer_roots(const std::vector<Int>& coeffs);

// Chooses a guard per root from comparisons among `inputs` (variables versus
// 0 and versus each other), using states given as valuations over all ids.
void attach_guards(BoundSolution& sol, VarId t, const std::vector<VarId>& inputs,
                   const std::vector<std::vector<Int>>& states);

}  // namespace syminfer
