#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "support.hpp"
#include "syminfer/cstates.hpp"
#include "syminfer/symexec.hpp"

using namespace syminfer;
using namespace syminfer::test;

namespace {

struct Fixture {
  Solver solver{solver_config()};
  std::shared_ptr<const Program> idiv = load("programs/idiv.mvl");
  SolverFeasibility feas{solver, 2};
};

std::vector<std::string> paths(const SymStateSet& s) {
  std::vector<std::string> out;
  for (const auto& st : s.states) out.push_back(st.path);
  return out;
}

}  // namespace

TEST_CASE("idiv has 9 L-states within depth 5 and 13 within depth 6") {
  Fixture f;
  auto s5 = exec_to_depth(f.idiv, "L", 5, f.feas);
  auto s6 = exec_to_depth(f.idiv, "L", 6, f.feas);
  CHECK(s5.states.size() == 9);
  CHECK(s6.states.size() == 13);
  for (const auto& st : s5.states) CHECK(st.depth <= 5);
  CHECK(s6.upto(5).size() == 9);
}

TEST_CASE("one full iteration on the x2 = 1 path gives y1 = 1, y2 = 0, y3 = X1 - 1") {
  Fixture f;
  auto s = exec_to_depth(f.idiv, "L", 5, f.feas);
  const Poly x1 = Poly::var(0);
  bool found = std::any_of(s.states.begin(), s.states.end(), [&](const SymState& st) {
    return st.env[2] == Poly(1) && st.env[3] == Poly(0) && st.env[4] == x1 - Poly(1);
  });
  CHECK(found);
}

TEST_CASE("extending a depth-5 set to 6 matches a fresh run and keeps the original states first") {
  Fixture f;
  auto s5 = exec_to_depth(f.idiv, "L", 5, f.feas);
  auto ext = extend(s5, 6, f.feas);
  auto fresh = exec_to_depth(f.idiv, "L", 6, f.feas);
  REQUIRE(ext.states.size() == 13);
  auto p5 = paths(s5);
  auto pe = paths(ext);
  CHECK(std::equal(p5.begin(), p5.end(), pe.begin()));
  auto pf = paths(fresh);
  std::sort(pe.begin(), pe.end());
  std::sort(pf.begin(), pf.end());
  CHECK(pe == pf);
}

TEST_CASE("extending twice equals a fresh run") {
  Fixture f;
  auto s = extend(extend(exec_to_depth(f.idiv, "L", 5, f.feas), 6, f.feas), 7, f.feas);
  auto fresh = exec_to_depth(f.idiv, "L", 7, f.feas);
  auto a = paths(s);
  auto b = paths(fresh);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("extend rejects a bound that does not grow") {
  Fixture f;
  auto s = exec_to_depth(f.idiv, "L", 3, f.feas);
  CHECK_THROWS_AS(extend(s, 3, f.feas), std::invalid_argument);
}

TEST_CASE("depth 0 keeps only branch-free paths") {
  Fixture f;
  auto s = exec_to_depth(f.idiv, "L", 0, f.feas);
  // The first head visit precedes every fork.
  REQUIRE(s.states.size() == 1);
  CHECK(s.states[0].depth == 0);
  CHECK(s.states[0].env[4] == Poly::var(0));

  auto straight = compile("fn f(a: int) { int x = a + 1; @E; }");
  SolverFeasibility feas1(f.solver, 1);
  auto e = exec_to_depth(straight, "E", 0, feas1);
  REQUIRE(e.states.size() == 1);
  CHECK(e.states[0].env[1] == Poly::var(0) + Poly(1));
}

TEST_CASE("witness inputs replay to the same concrete state") {
  Fixture f;
  auto s = exec_to_depth(f.idiv, "L", 6, f.feas);
  const auto& view = f.idiv->location("L");
  for (const auto& st : s.states) {
    REQUIRE(st.witness);
    ConcreteState c = concretize(st, view, *st.witness);
    Trace t = interpret(*f.idiv, *st.witness, "L");
    CHECK(std::find(t.states.begin(), t.states.end(), c) != t.states.end());
    CHECK(st.path_condition().eval(*st.witness));
  }
}

TEST_CASE("assume never charges depth and filters paths") {
  Fixture f;
  auto p = compile("fn f(a: int) { assume(a >= 3); int x = 0; if (a < 0) { x = 1; } @E; }");
  SolverFeasibility feas1(f.solver, 1);
  auto s = exec_to_depth(p, "E", 0, feas1);
  REQUIRE(s.states.size() == 1);
  CHECK(s.states[0].env[1] == Poly(0));
}

TEST_CASE("program hash is stable across parses") {
  auto a = load("programs/idiv.mvl");
  auto b = compile(pretty_print(*a));
  CHECK(program_hash(*a) == program_hash(*b));
  CHECK(input_name(0) == "X1");
}
