#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "syminfer/infer.hpp"

using namespace syminfer;
using namespace syminfer::test;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool spans(const std::vector<EqInvariant>& basis, const Poly& p, const std::vector<Monomial>& terms) {
  RowEchelon e(terms.size());
  for (const auto& b : basis) e.add(coefficient_row(b.poly, terms));
  return e.in_span(coefficient_row(p, terms));
}

}  // namespace

TEST_CASE("term enumeration") {
  auto t3 = create_terms(3, 2);
  CHECK(t3.size() == 10);
  std::set<std::vector<unsigned>> exps;
  for (const auto& m : t3) exps.insert(m.exponents(3));
  CHECK(exps.size() == 10);
  for (const auto& e : exps) CHECK(e[0] + e[1] + e[2] <= 2);

  auto t1 = create_terms(1, 1);
  REQUIRE(t1.size() == 2);
  CHECK(t1[0].is_one());
  CHECK(t1[1] == Monomial::var(0));

  CHECK(create_terms(4, 4).size() == binomial(8, 4));
  CHECK(create_terms(5, 2).size() == binomial(7, 2));
  for (std::size_t n = 1; n <= 6; ++n)
    for (unsigned d = 1; d <= 4; ++d) CHECK(term_count(n, d) == binomial(n + d, d));
}

TEST_CASE("term cap") {
  CHECK_THROWS_AS(create_terms(10, 6), TermCapError);
  CHECK_THROWS_AS(create_terms(3, 0), std::invalid_argument);
  CHECK_NOTHROW(create_terms(10, 6, 10000));
}

TEST_CASE("planted relation is recovered") {
  auto terms = create_terms(2, 1);
  std::vector<std::vector<Int>> pts;
  for (long v : {-3, 0, 4, 9}) pts.push_back(ints({v, v}));
  auto eqs = infer_eqts(terms, pts);
  REQUIRE(eqs.size() == 1);
  CHECK(spans(eqs, Poly::var(0) - Poly::var(1), terms));
}

TEST_CASE("rank-nullity bound on random states") {
  std::mt19937_64 rng(3);
  auto terms = create_terms(3, 2);
  for (std::size_t m = 1; m < terms.size(); ++m) {
    std::vector<std::vector<Int>> pts;
    for (std::size_t i = 0; i < m; ++i)
      pts.push_back(ints({static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 41) - 20,
                          static_cast<long>(rng() % 41) - 20}));
    CHECK(infer_eqts(terms, pts).size() >= terms.size() - m);
  }
}

TEST_CASE("no states means no information") {
  auto terms = create_terms(2, 2);
  CHECK(infer_eqts(terms, std::vector<std::vector<Int>>{}).size() == terms.size());
}

TEST_CASE("equalities are canonical") {
  auto terms = create_terms(2, 1);
  std::vector<std::vector<Int>> pts{ints({2, 4}), ints({3, 6}), ints({-1, -2})};
  auto eqs = infer_eqts(terms, pts);
  REQUIRE(eqs.size() == 1);
  // 2x - y = 0 up to sign, primitive.
  CHECK(eqs[0].poly.content() == 1);
  CHECK(canonical(eqs[0].poly.scaled(-3)) == eqs[0].poly);
}

TEST_CASE("idiv sample supports the three candidate invariants") {
  auto p = load("programs/idiv.mvl");
  std::vector<std::vector<Int>> pts;
  for (long x1 = 0; x1 < 12; ++x1)
    for (const auto& s : interpret(*p, ints({x1, 12}), "L").states) pts.push_back(s.values);
  for (long x1 = 0; x1 < 30; ++x1)
    for (long x2 = 1; x2 < 6; ++x2) pts.push_back(interpret(*p, ints({x1, x2}), "L").states.back().values);
  auto name = names_of(*p, "L");
  auto terms = create_terms(5, 3);
  auto eqs = infer_eqts(terms, pts);
  CHECK(spans(eqs, poly(*p, "L", "y1 * y2 * y3"), terms));
  CHECK(spans(eqs, poly(*p, "L", "x2 * y1 - x1 + y2 + y3"), terms));
  CHECK(spans(eqs, poly(*p, "L", "x1 * y3 - 12 * y1 * y3 - y2 * y3 - y3 * y3"), terms));
  for (const auto& e : eqs)
    for (const auto& pt : pts) CHECK(e.poly.eval(pt) == 0);
}

TEST_CASE("octagonal terms for two variables") {
  auto ts = oct_terms(2);
  CHECK(ts.size() == 8);
  CHECK(oct_terms(5).size() == 2 * 5 + 4 * 10);
  std::set<std::vector<long>> coeffs;
  for (const auto& t : ts) {
    Poly p = t.poly();
    coeffs.insert({p.eval(ints({1, 0})).get_si(), p.eval(ints({0, 1})).get_si()});
  }
  CHECK(coeffs.size() == 8);
}

TEST_CASE("octagonal bounds from two states") {
  std::vector<std::vector<Int>> pts{ints({1, 2}), ints({3, 1})};
  auto bounds = oct_bounds_from_states(pts, 2);
  REQUIRE(bounds.size() == 8);
  // Oracle: the maximum of every +-x +-y combination over the points.
  std::map<std::pair<long, long>, long> oracle;
  for (long a : {-1, 0, 1})
    for (long b : {-1, 0, 1}) {
      if (a == 0 && b == 0) continue;
      long best = std::numeric_limits<long>::min();
      for (const auto& pt : pts) best = std::max(best, a * pt[0].get_si() + b * pt[1].get_si());
      oracle[{a, b}] = best;
    }
  for (const auto& ineq : bounds) {
    Poly p = ineq.term.poly();
    std::pair<long, long> key{p.eval(ints({1, 0})).get_si(), p.eval(ints({0, 1})).get_si()};
    CHECK(ineq.bound == oracle.at(key));
  }
  NameFn name = [](VarId v) { return std::string(v == 0 ? "x" : "y"); };
  std::set<std::string> text;
  for (const auto& b : bounds) text.insert(b.to_string(name));
  CHECK(text.count("x <= 3"));
  CHECK(text.count("x >= 1"));
  CHECK(text.count("x + y <= 4"));
}

TEST_CASE("single-state octagon pins the variable") {
  auto bounds = oct_bounds_from_states({ints({5})}, 1);
  REQUIRE(bounds.size() == 2);
  for (const auto& b : bounds) CHECK(b.bound == b.term.eval(ints({5})));
}
