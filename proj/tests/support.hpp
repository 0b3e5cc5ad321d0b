#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "syminfer/cegir.hpp"
#include "syminfer/driver.hpp"
#include "syminfer/lang.hpp"
#include "syminfer/smt.hpp"

namespace syminfer::test {

inline std::string source_path(const std::string& rel) { return std::string(SYMINFER_SOURCE_DIR) + "/" + rel; }

inline std::shared_ptr<const Program> load(const std::string& rel) {
  return std::make_shared<const Program>(parse(read_file(source_path(rel))));
}

inline std::shared_ptr<const Program> compile(const std::string& src) { return std::make_shared<const Program>(parse(src)); }

inline SolverConfig solver_config(int timeout_ms = 5000) {
  SolverConfig c;
  c.timeout_ms = timeout_ms;
  return c;
}

inline std::vector<Int> ints(std::initializer_list<long> v) {
  std::vector<Int> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Names positions after the variables of a location.
inline NameFn names_of(const Program& p, const std::string& loc) {
  auto names = p.var_names(p.location(loc).vars);
  return [names](VarId v) { return names.at(v); };
}

// Position of a variable within a location's view.
inline VarId pos(const Program& p, const std::string& loc, const std::string& var) {
  const auto& vars = p.location(loc).vars;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (p.vars[static_cast<std::size_t>(vars[i])] == var) return static_cast<VarId>(i);
  throw std::invalid_argument("no variable " + var);
}

// Parses a relation over the variables of a location.
inline Formula relation(const Program& p, const std::string& loc, const std::string& text) {
  return to_formula(parse_bexpr(text), [&](const AExpr& a) {
    return to_poly(a, [&](const std::string& n) { return pos(p, loc, n); });
  });
}

inline Poly poly(const Program& p, const std::string& loc, const std::string& text) {
  return to_poly(parse_aexpr(text), [&](const std::string& n) { return pos(p, loc, n); });
}

// Small terminating loop programs with bounded inputs and a loop-head marker.
inline std::string random_loop_program(std::mt19937_64& rng, int index) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  const char* cmp[] = {"<", "<=", ">", ">=", "==", "!="};
  std::string s = "fn r" + std::to_string(index) + "(a: int, b: int) {\n";
  s += "  assume(a >= " + std::to_string(pick(-4, 0)) + " && a <= " + std::to_string(pick(1, 6)) +
       " && b >= " + std::to_string(pick(-4, 0)) + " && b <= " + std::to_string(pick(1, 6)) + ");\n";
  s += "  int i = 0, x = " + std::to_string(pick(-3, 3)) + ", y = " + std::to_string(pick(-3, 3)) + ";\n";
  s += "  while (i < a) @L {\n";
  s += "    if (x " + std::string(cmp[pick(0, 5)]) + " b) {\n";
  s += "      x = x + " + std::to_string(pick(-2, 3)) + ";\n";
  s += "    } else {\n";
  s += "      y = y + " + (pick(0, 1) ? std::string("x") : std::to_string(pick(-2, 2))) + ";\n";
  s += "    }\n";
  if (pick(0, 1)) s += "    if (y > " + std::to_string(pick(-2, 4)) + ") {\n      y = y - 1;\n    }\n";
  s += "    i = i + 1;\n";
  s += "  }\n}\n";
  return s;
}

}  // namespace syminfer::test
