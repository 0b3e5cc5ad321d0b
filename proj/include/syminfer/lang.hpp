#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "syminfer/poly.hpp"

namespace syminfer {

// Mini imperative integer language: AST, parser, printer and interpreter.

class LangError : public std::runtime_error {
 public:
  enum class Kind { Syntax, DuplicateLocation, UseBeforeDeclaration, DuplicateDeclaration, Uninitialized };
  LangError(Kind kind, int line, int column, const std::string& msg);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

struct AExpr {
  enum class Kind { Var, Const, Neg, Add, Sub, Mul };
  Kind kind = Kind::Const;
  std::string name;    // Var
  Int value;           // Const
  std::vector<AExpr> args;
  int var = -1;        // resolved canonical index (Var), set by validation

  static AExpr variable(std::string n);
  static AExpr constant(Int v);
  static AExpr unary(Kind k, AExpr a);
  static AExpr binary(Kind k, AExpr a, AExpr b);

  bool operator==(const AExpr& o) const;
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
CmpOp negate(CmpOp op);
std::string_view cmp_symbol(CmpOp op);

struct BExpr {
  enum class Kind { True, False, Cmp, And, Or, Not };
  Kind kind = Kind::True;
  CmpOp op = CmpOp::Eq;
  std::vector<AExpr> operands;  // Cmp: lhs, rhs
  std::vector<BExpr> args;      // And/Or: two, Not: one

  static BExpr literal(bool b);
  static BExpr compare(CmpOp op, AExpr lhs, AExpr rhs);
  static BExpr conj(BExpr a, BExpr b);
  static BExpr disj(BExpr a, BExpr b);
  static BExpr negation(BExpr a);

  bool operator==(const BExpr& o) const = default;
};

struct Stmt {
  enum class Kind { Assume, Decl, Assign, While, If, LocMark };
  Kind kind = Kind::LocMark;
  BExpr cond;                                               // Assume, While, If
  std::vector<std::pair<std::string, std::optional<AExpr>>> decls;  // Decl
  std::string target;                                       // Assign
  AExpr value;                                              // Assign
  std::vector<Stmt> body;                                   // While body, If then-branch
  std::vector<Stmt> orelse;                                 // If else-branch
  bool has_else = false;
  std::string label;  // LocMark, or the loop-head marker of a While (may be empty)
  int line = 0;
  std::vector<int> decl_vars;  // Decl: resolved canonical indices
  int target_var = -1;         // Assign: resolved canonical index

  bool operator==(const Stmt& o) const;
};

struct LocationInfo {
  std::string label;
  // Variables in scope and definitely assigned at the location, in canonical order.
  std::vector<int> vars;
  bool loop_head = false;
};

struct Program {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> body;

  // Derived by validate(): all variables in declaration order (params first)
  // and the per-location variable sets.
  std::vector<std::string> vars;
  std::map<std::string, LocationInfo> locations;
  std::vector<std::string> location_order;

  const LocationInfo& location(const std::string& label) const;
  std::vector<std::string> var_names(const std::vector<int>& ids) const;
  int var_index(std::string_view name) const;

  // Structural equality of the source-level AST (derived tables are ignored).
  bool same_ast(const Program& o) const;
};

// Parses and validates a program.
Program parse(std::string_view text);
// Standalone expression parsers, used for relation files and cached states.
AExpr parse_aexpr(std::string_view text);
BExpr parse_bexpr(std::string_view text);

// Resolves variables, checks declarations and location uniqueness and fills
// the derived tables. Called by parse(); exposed for ASTs built in code.
void validate(Program& p);

std::string pretty_print(const Program& p);
std::string to_source(const AExpr& e);
std::string to_source(const BExpr& e);

// Converts an expression to a polynomial, resolving names with `resolve`.
Poly to_poly(const AExpr& e, const std::function<VarId(const std::string&)>& resolve);

// Evaluation with a total valuation indexed by canonical variable.
Int eval(const AExpr& e, std::span<const Int> env);
bool eval(const BExpr& e, std::span<const Int> env);

struct ConcreteState {
  std::string loc;
  std::vector<Int> values;  // aligned with Program::location(loc).vars
  bool operator==(const ConcreteState&) const = default;
  std::strong_ordering operator<=>(const ConcreteState& o) const {
    if (loc != o.loc) return loc <=> o.loc;
    if (values.size() != o.values.size()) return values.size() <=> o.values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
      int c = cmp(values[i], o.values[i]);
      if (c != 0) return c <=> 0;
    }
    return std::strong_ordering::equal;
  }
};

struct Trace {
  std::vector<ConcreteState> states;
  bool assume_failed = false;
  bool truncated = false;
};

// Runs the program on `inputs`, recording the state every time control
// reaches `loc`. `fuel` bounds the number of executed statements and loop tests.
Trace interpret(const Program& p, std::span<const Int> inputs, const std::string& loc,
                long fuel = 1'000'000);

}  // namespace syminfer
