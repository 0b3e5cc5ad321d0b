#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "syminfer/lang.hpp"
#include "syminfer/poly.hpp"

namespace syminfer {

// Boolean combination of polynomial sign conditions `poly op 0` over integer
// symbols. Constructors fold constants and push negation into atoms, so a
// Formula never contains Not.
struct Formula {
  enum class Kind { True, False, Atom, And, Or };
  Kind kind = Kind::True;
  CmpOp op = CmpOp::Eq;
  Poly poly;
  std::vector<Formula> args;

  static Formula truth(bool b);
  static Formula atom(const Poly& lhs, CmpOp op, const Poly& rhs = Poly{});
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula negation(const Formula& f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);

  std::optional<bool> constant() const;
  bool eval(std::span<const Int> values) const;
  void collect_vars(std::set<VarId>& out) const;
  Formula shifted(VarId offset) const;

  // Concrete syntax of the input language, parseable by parse_bexpr.
  std::string to_string(const NameFn& name) const;

  bool operator==(const Formula&) const = default;
};

// Converts a boolean program expression; `term` maps arithmetic
// sub-expressions to polynomials.
Formula to_formula(const BExpr& e, const std::function<Poly(const AExpr&)>& term);

// Point-exclusion set: each point is a full assignment to `symbols`.
struct BlockSet {
  std::vector<VarId> symbols;
  std::vector<std::vector<Int>> points;

  // Returns false when the point was already present.
  bool add(std::vector<Int> point);
  bool contains(const std::vector<Int>& point) const;
  std::size_t size() const { return points.size(); }
  // The negated disjunction of all points, i.e. "none of the blocked points".
  Formula exclusion() const;

 private:
  mutable std::set<std::vector<Int>> index_;  // rebuilt when out of sync with points
  const std::set<std::vector<Int>>& index() const;
};

}  // namespace syminfer
