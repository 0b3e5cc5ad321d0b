#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include "support.hpp"
#include "syminfer/cstates.hpp"
#include "syminfer/infer.hpp"

using namespace syminfer;
using namespace syminfer::test;

namespace {

bool reproduces(const Program& p, const std::string& loc, const ConcreteState& s, const std::vector<Int>& in) {
  Trace t = interpret(p, in, loc);
  return std::find(t.states.begin(), t.states.end(), s) != t.states.end();
}

}  // namespace

TEST_CASE("symbolic bootstrap covers every depth-5 state and replays") {
  auto p = load("programs/idiv.mvl");
  Solver solver(solver_config());
  SolverFeasibility feas(solver, 2);
  auto set = exec_to_depth(p, "L", 5, feas);
  auto sample = gen_states(*p, p->location("L"), set, 5, 1, solver);
  CHECK(sample.states.size() >= 9);
  REQUIRE(sample.inputs.size() == sample.states.size());
  for (std::size_t i = 0; i < sample.states.size(); ++i) CHECK(reproduces(*p, "L", sample.states[i], sample.inputs[i]));
}

TEST_CASE("degree-2 idiv bootstrap yields at least 21 distinct states") {
  auto p = load("programs/idiv.mvl");
  Solver solver(solver_config());
  SolverFeasibility feas(solver, 2);
  auto set = exec_to_depth(p, "L", 10, feas);
  const std::size_t n = create_terms(5, 2).size();
  REQUIRE(n == 21);
  auto sample = gen_states(*p, p->location("L"), set, 10, n, solver);
  std::set<std::vector<Int>> distinct;
  for (const auto& s : sample.states) distinct.insert(s.values);
  CHECK(distinct.size() >= 21);
  CHECK_FALSE(sample.exhausted);
  for (std::size_t i = 0; i < sample.states.size(); ++i) CHECK(reproduces(*p, "L", sample.states[i], sample.inputs[i]));
}

TEST_CASE("singleton input space is exhausted after one state") {
  auto p = compile("fn f(a: int) { assume(a == 7); int x = a + 1; @E; }");
  Solver solver(solver_config());
  SolverFeasibility feas(solver, 1);
  auto set = exec_to_depth(p, "E", 5, feas);
  auto sample = gen_states(*p, p->location("E"), set, 5, 4, solver);
  REQUIRE(sample.states.size() == 1);
  CHECK(sample.states[0].values == ints({7, 8}));
  CHECK(sample.exhausted);
}

TEST_CASE("seeded generation is reproducible") {
  auto p = load("programs/idiv.mvl");
  Solver s1(solver_config()), s2(solver_config());
  SolverFeasibility f1(s1, 2), f2(s2, 2);
  auto a = gen_states(*p, p->location("L"), exec_to_depth(p, "L", 8, f1), 8, 30, s1, {5});
  auto b = gen_states(*p, p->location("L"), exec_to_depth(p, "L", 8, f2), 8, 30, s2, {5});
  CHECK(a.states == b.states);
  CHECK(a.inputs == b.inputs);
}

TEST_CASE("fuzzing finds x2 = 1 states") {
  auto p = load("programs/idiv.mvl");
  // About one valid run in 300 has x2 = 1, and each run yields up to x1 states.
  auto sample = fuzz_states(*p, p->location("L"), 150000, -300, 300, 1);
  CHECK(sample.states.size() >= 150000);
  const VarId x2 = pos(*p, "L", "x2");
  CHECK(std::any_of(sample.states.begin(), sample.states.end(), [&](const auto& s) { return s.values[x2] == 1; }));
  for (std::size_t i = 0; i < sample.states.size(); i += 997)
    CHECK(reproduces(*p, "L", sample.states[i], sample.inputs[i]));
}

TEST_CASE("fuzzing an empty input range") {
  auto p = load("programs/idiv.mvl");
  auto sample = fuzz_states(*p, p->location("L"), 10, 0, 0, 1);
  CHECK(sample.states.empty());
  CHECK(sample.exhausted);
  CHECK(sample.block.size() == 1);
}

TEST_CASE("fuzzing is reproducible") {
  auto p = load("programs/idiv.mvl");
  auto a = fuzz_states(*p, p->location("L"), 50, -300, 300, 9);
  auto b = fuzz_states(*p, p->location("L"), 50, -300, 300, 9);
  CHECK(a.states == b.states);
}

TEST_CASE("projection onto a narrower view") {
  auto p = load("programs/cav09_fig1a.mvl");
  LocationInfo view = p->location("L");
  view.vars = {p->var_index("m"), p->var_index("t")};
  auto sample = fuzz_states(*p, view, 5, 0, 20, 2);
  for (std::size_t i = 0; i < sample.states.size(); ++i) {
    REQUIRE(sample.states[i].values.size() == 2);
    CHECK(sample.states[i].values[0] == sample.inputs[i][0]);
  }
}

TEST_CASE("csv output") {
  std::ostringstream os;
  write_csv(os, {"a", "b"}, {ConcreteState{"L", ints({1, -2})}, ConcreteState{"L", ints({3, 4})}});
  CHECK(os.str() == "a,b\n1,-2\n3,4\n");
}
