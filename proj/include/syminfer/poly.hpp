#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace syminfer {

using Int = mpz_class;
using Rat = mpq_class;

using VarId = std::uint32_t;

// A power product over variable ids, stored as (var, exponent) pairs sorted by var.
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(VarId v, unsigned exp = 1);
  static Monomial from_exponents(std::span<const unsigned> exps);

  unsigned degree() const { return degree_; }
  unsigned exponent(VarId v) const;
  bool is_one() const { return factors_.empty(); }
  const std::vector<std::pair<VarId, unsigned>>& factors() const { return factors_; }

  Monomial operator*(const Monomial& o) const;
  // Dense exponent vector of length n (vars >= n must not occur).
  std::vector<unsigned> exponents(std::size_t n) const;
  Monomial shifted(VarId offset) const;
  Monomial without(VarId v) const;

  Int eval(std::span<const Int> values) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::pair<VarId, unsigned>> factors_;
  unsigned degree_ = 0;
};

// Term order: by total degree, then lexicographically with lower variable ids
// first (so 1, x, y, z, x*x, x*y, ... for x < y < z).
struct TermOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using NameFn = std::function<std::string(VarId)>;

// Sparse multivariate polynomial with arbitrary-precision integer coefficients.
// The representation is canonical: no zero coefficients are stored, so
// structural equality is polynomial equality.
class Poly {
 public:
  using TermMap = std::map<Monomial, Int, TermOrder>;

  Poly() = default;
  Poly(const Int& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Int(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(VarId v);
  static Poly term(const Int& c, const Monomial& m);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Int constant_term() const;
  // Coefficient of the first printed term (highest degree, then term order).
  Int leading_coefficient() const;
  unsigned degree() const;
  unsigned degree_in(VarId v) const;
  std::set<VarId> variables() const;
  const TermMap& terms() const { return terms_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Int& c) const;
  bool operator==(const Poly&) const = default;

  Int eval(std::span<const Int> values) const;
  Poly substitute(VarId v, const Poly& replacement) const;
  Poly shifted(VarId offset) const;
  Poly renamed(const std::function<VarId(VarId)>& map) const;

  // Coefficients c_0..c_d of this polynomial viewed as sum_j c_j * v^j.
  std::vector<Poly> coefficients_in(VarId v) const;
  static Poly from_coefficients_in(VarId v, std::span<const Poly> coeffs);

  // Gcd of all coefficients (0 for the zero polynomial).
  Int content() const;
  // Divides every coefficient exactly; the caller guarantees divisibility.
  Poly divided_exact(const Int& d) const;

  // Human-readable form in the concrete syntax of the input language:
  // highest-degree terms first, powers written as repeated products.
  std::string to_string(const NameFn& name) const;

 private:
  TermMap terms_;
};

// Exact division of p by (v - root) where root does not mention v.
// Returns the quotient when the remainder is zero.
std::optional<Poly> divide_by_linear(const Poly& p, VarId v, const Poly& root);

std::string default_var_name(VarId v);

}  // namespace syminfer
