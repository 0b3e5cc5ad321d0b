#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "support.hpp"
#include "syminfer/symexec.hpp"

using namespace syminfer;
using namespace syminfer::test;

namespace {

NameFn plain = [](VarId v) { return "v" + std::to_string(v); };

Formula vc_relation(const Program& p, const std::string& text) {
  VcSymbols vc{&p};
  return to_formula(parse_bexpr(text), [&](const AExpr& a) {
    return to_poly(a, [&](const std::string& n) -> VarId {
      if (n.size() > 1 && n[0] == 'X' && std::isdigit(static_cast<unsigned char>(n[1])))
        return static_cast<VarId>(std::stoi(n.substr(1)) - 1);
      return vc.var(p.var_index(n));
    });
  });
}

Formula idiv_states(const Program& p, Solver& solver, int k) {
  SolverFeasibility feas(solver, 2);
  auto set = exec_to_depth(std::make_shared<const Program>(p), "L", k, feas);
  VcSymbols vc{&p};
  std::vector<Formula> ds;
  for (const auto& s : set.states) ds.push_back(encode_state(s, p.location("L").vars, vc));
  return Formula::disj(std::move(ds));
}

}  // namespace

TEST_CASE("contradiction is unsat") {
  Solver s(solver_config());
  Formula f = Formula::conj(Formula::atom(Poly::var(0), CmpOp::Eq, Poly(1)),
                            Formula::atom(Poly::var(0), CmpOp::Eq, Poly(2)));
  CHECK(s.check_sat(f, plain).unsat());
}

TEST_CASE("forced model is extracted") {
  Solver s(solver_config());
  Poly x = Poly::var(0);
  Formula f = Formula::conj(Formula::atom(x * x, CmpOp::Eq, Poly(4)), Formula::atom(x, CmpOp::Gt));
  SmtVerdict v = s.check_sat(f, plain);
  REQUIRE(v.sat());
  CHECK(v.model.at(0) == 2);
}

TEST_CASE("negative models and numerals") {
  Solver s(solver_config());
  Poly x = Poly::var(3);
  Formula f = Formula::atom(x.scaled(-2), CmpOp::Eq, Poly(14));
  SmtVerdict v = s.check_sat(f, plain);
  REQUIRE(v.sat());
  CHECK(v.model.at(3) == -7);
  CHECK(smt_term(x.scaled(-2) + Poly(-5), plain).find("(- 5)") != std::string::npos);
}

TEST_CASE("hard nonlinear query at a tight timeout is unknown") {
  Solver s(solver_config(200));
  Poly x = Poly::var(0), y = Poly::var(1), z = Poly::var(2);
  std::vector<Formula> fs{Formula::atom(x * x * x + y * y * y, CmpOp::Eq, z * z * z)};
  for (VarId v = 0; v < 3; ++v) fs.push_back(Formula::atom(Poly::var(v), CmpOp::Gt, Poly(1)));
  SmtVerdict v = s.check_sat(Formula::conj(fs), plain);
  CHECK(v.unknown());
  CHECK(v.reason == "timeout");
  // The solver remains usable afterwards.
  CHECK(s.check_sat(Formula::atom(x, CmpOp::Eq, Poly(3)), plain).sat());
}

TEST_CASE("a state with two else-iterations encodes its path and bindings") {
  auto p = load("programs/idiv.mvl");
  Solver s(solver_config());
  SolverFeasibility feas(s, 2);
  auto set = exec_to_depth(p, "L", 5, feas);
  const SymState* l2 = nullptr;
  for (const auto& st : set.states)
    if (st.env[2] == Poly(0) && st.env[3] == Poly(2)) l2 = &st;
  REQUIRE(l2);
  VcSymbols vc{p.get()};
  Formula enc = encode_state(*l2, p->location("L").vars, vc);
  Formula expected = vc_relation(*p, "X1 >= 0 && X2 >= 1 && X1 != 0 && X1 != 1 && X2 != 1 && X2 != 2 && "
                                     "x1 == X1 && x2 == X2 && y1 == 0 && y2 == 2 && y3 == X1 - 2");
  auto names = [&](VarId id) { return vc.smt_name(id); };
  CHECK(s.check_implication(enc, expected, names).unsat());
  CHECK(s.check_implication(expected, enc, names).unsat());
}

TEST_CASE("unset variables are omitted from the encoding") {
  auto p = compile("fn f(a: int) { int x = a; int y; @E; y = 1; }");
  SymState st;
  st.loc = "E";
  st.env = {Poly::var(0), Poly::var(0), std::nullopt};
  VcSymbols vc{p.get()};
  Formula enc = encode_state(st, p->location("E").vars, vc);
  std::set<VarId> used;
  enc.collect_vars(used);
  CHECK(used.count(vc.var(2)) == 0);
  CHECK(used.count(vc.var(1)) == 1);
}

TEST_CASE("implication checks over the idiv depth-5 states") {
  auto p = load("programs/idiv.mvl");
  Solver s(solver_config());
  Formula lhs = idiv_states(*p, s, 5);
  VcSymbols vc{p.get()};
  auto names = [&](VarId id) { return vc.smt_name(id); };
  SmtVerdict refuted = s.check_implication(lhs, vc_relation(*p, "y1 * y2 * y3 == 0"), names);
  REQUIRE(refuted.sat());
  CHECK(s.check_implication(lhs, vc_relation(*p, "x2 * y1 - x1 + y2 + y3 == 0"), names).unsat());
  CHECK(s.check_implication(Formula::truth(false), vc_relation(*p, "y1 == 42"), names).unsat());
}

TEST_CASE("reserved words are mangled") {
  auto p = compile("fn f(a: int) { int and = a, x = 0; @E; }");
  VcSymbols vc{p.get()};
  CHECK(vc.smt_name(vc.var(1)) != "and");
  CHECK(vc.smt_name(vc.var(2)) == "x");
  CHECK(vc.display_name(0) == "X1");
}

TEST_CASE("repeated queries hit the cache and fresh processes agree") {
  Solver reuse(solver_config());
  SolverConfig fresh_cfg = solver_config();
  fresh_cfg.reuse_process = false;
  Solver fresh(fresh_cfg);
  Formula f = Formula::atom(Poly::var(0) * Poly::var(0), CmpOp::Eq, Poly(9));
  Formula g = Formula::atom(Poly::var(0), CmpOp::Lt, Poly(0));
  for (Solver* s : {&reuse, &fresh}) {
    CHECK(s->check_sat(f, plain).sat());
    CHECK(s->check_sat(Formula::conj(f, g), plain).model.at(0) == -3);
    CHECK(s->check_sat(f, plain).sat());
    CHECK(s->cache_hits() == 1);
  }
}

TEST_CASE("query logging writes numbered scripts") {
  auto dir = std::filesystem::temp_directory_path() / "syminfer_smt_log_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  SolverConfig c = solver_config();
  c.log_dir = dir.string();
  Solver s(c);
  s.check_sat(Formula::atom(Poly::var(0), CmpOp::Eq, Poly(1)), plain);
  CHECK(std::filesystem::exists(dir / "000001.smt2"));
  std::string text = read_file((dir / "000001.smt2").string());
  CHECK(text.find("(check-sat)") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("missing solver binary is reported") {
  SolverConfig c;
  c.command = {"/nonexistent/solver-binary"};
  Solver s(c);
  CHECK_THROWS_AS(s.check_sat(Formula::atom(Poly::var(0), CmpOp::Eq, Poly(1)), plain), SmtError);
}
