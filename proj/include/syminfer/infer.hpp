#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "syminfer/lang.hpp"
#include "syminfer/poly.hpp"

namespace syminfer {

// Candidate generation from concrete states. Terms and relations are written
// over location-local variable positions: VarId i is the i-th variable of the
// location's variable list.

class TermCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// All monomials of degree <= d over n variables, in term order.
// Throws TermCapError when there would be more than `cap` of them.
std::vector<Monomial> create_terms(std::size_t n, unsigned d, std::size_t cap = 500);

// Number of monomials of degree <= d over n variables, C(n + d, d).
std::size_t term_count(std::size_t n, unsigned d);

// Sum c_i t_i = 0 in canonical form: coefficient gcd 1, first printed
// coefficient positive.
struct EqInvariant {
  Poly poly;
  bool operator==(const EqInvariant&) const = default;
  std::string to_string(const NameFn& name) const;
};

// Scales a nonzero polynomial to canonical form.
Poly canonical(const Poly& p);

// Incrementally maintained reduced row echelon form over the rationals.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}
  // Returns true when the row increased the rank.
  bool add(const std::vector<Rat>& row);
  bool in_span(const std::vector<Rat>& row) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  // Integer basis of the right nullspace, one vector per free column, each
  // scaled to coprime integers.
  std::vector<std::vector<Int>> nullspace() const;
  const std::vector<std::vector<Rat>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t cols_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Rat> reduce(std::vector<Rat> row) const;
};

// Rows of term valuations, one per distinct state.
std::vector<std::vector<Int>> term_matrix(const std::vector<Monomial>& terms,
                                          const std::vector<std::vector<Int>>& points);

// Equalities over `terms` that vanish on all points: one per nullspace basis
// vector, in canonical form.
std::vector<EqInvariant> infer_eqts(const std::vector<Monomial>& terms, const std::vector<std::vector<Int>>& points);
std::vector<EqInvariant> infer_eqts(const std::vector<Monomial>& terms, const std::vector<ConcreteState>& states);

// Coefficients of p over `terms`; p must be a combination of them.
std::vector<Rat> coefficient_row(const Poly& p, const std::vector<Monomial>& terms);

// s_a * v_a (+ s_b * v_b).
struct OctTerm {
  std::size_t a = 0;
  int sa = 1;
  bool binary = false;
  std::size_t b = 0;
  int sb = 1;

  Poly poly() const;
  Int eval(const std::vector<Int>& values) const;
  std::string to_string(const NameFn& name) const;
  bool operator==(const OctTerm&) const = default;
};

// For n variables: +v, -v for each v, then for each pair i < j:
// vi - vj, vj - vi, vi + vj, -vi - vj. Size 2n + 4 C(n, 2).
std::vector<OctTerm> oct_terms(std::size_t n);

// oct <= bound
struct Inequality {
  OctTerm term;
  Int bound;
  std::string to_string(const NameFn& name) const;
  bool operator==(const Inequality&) const = default;
};

// For each oct term, its maximum over the points.
std::vector<Inequality> oct_bounds_from_states(const std::vector<std::vector<Int>>& points, std::size_t n);

}  // namespace syminfer
