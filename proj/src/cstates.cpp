#include "syminfer/cstates.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace syminfer {

bool StateSample::add(ConcreteState s, std::vector<Int> input) {
  if (index_.size() != states.size()) index_ = {states.begin(), states.end()};
  if (!index_.insert(s).second) return false;
  states.push_back(std::move(s));
  inputs.push_back(std::move(input));
  return true;
}

std::vector<std::vector<Int>> StateSample::points() const {
  std::vector<std::vector<Int>> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.values);
  return out;
}

ConcreteState concretize(const SymState& s, const LocationInfo& view, std::span<const Int> inputs) {
  ConcreteState c;
  c.loc = s.loc;
  for (int v : view.vars) {
    const auto& e = s.env.at(static_cast<std::size_t>(v));
    c.values.push_back(e ? e->eval(inputs) : Int(0));
  }
  return c;
}

ConcreteState project(const ConcreteState& s, const LocationInfo& full, const LocationInfo& view) {
  ConcreteState c;
  c.loc = s.loc;
  for (int v : view.vars) {
    auto it = std::find(full.vars.begin(), full.vars.end(), v);
    if (it == full.vars.end()) throw std::invalid_argument("project: variable outside the location");
    c.values.push_back(s.values.at(static_cast<std::size_t>(it - full.vars.begin())));
  }
  return c;
}

namespace {

std::vector<Int> model_inputs(const SmtVerdict& v, std::size_t n) {
  std::vector<Int> in(n, Int(0));
  for (const auto& [sym, val] : v.model)
    if (sym < n) in[sym] = val;
  return in;
}

}  // namespace

StateSample gen_states(const Program& p, const LocationInfo& loc, const SymStateSet& set, int d, std::size_t n,
                       Solver& solver, const GenOptions& opts) {
  StateSample out;
  const std::size_t ni = p.params.size();
  for (std::size_t i = 0; i < ni; ++i) out.block.symbols.push_back(static_cast<VarId>(i));
  auto states = set.upto(d);
  if (states.empty()) {
    out.exhausted = true;
    out.diagnostic = "location " + set.loc + " is not reached within depth " + std::to_string(d);
    return out;
  }

  auto solve = [&](const SymState& s) -> std::optional<std::vector<Int>> {
    Formula f = Formula::conj(s.path_condition(), out.block.exclusion());
    SmtVerdict v = solver.check_sat(f, input_smt_name);
    if (!v.sat()) return std::nullopt;
    return model_inputs(v, ni);
  };
  auto take = [&](const SymState& s, std::vector<Int> in) {
    out.block.add(in);
    ConcreteState c = concretize(s, loc, in);
    out.add(std::move(c), std::move(in));
  };

  // Phase 1: one state per symbolic state.
  for (const SymState* s : states) {
    if (s->witness && !out.block.contains(*s->witness)) {
      take(*s, *s->witness);
    } else if (auto in = solve(*s)) {
      take(*s, std::move(*in));
    } else if (s->witness) {
      out.add(concretize(*s, loc, *s->witness), *s->witness);
    }
  }

  // Phase 2: random symbolic states, fresh input points.
  std::mt19937_64 rng(opts.seed);
  std::vector<const SymState*> pool = states;
  std::size_t budget = n * static_cast<std::size_t>(opts.attempts_per_state) + 16;
  while (out.states.size() < n) {
    if (pool.empty() || budget == 0) {
      out.exhausted = true;
      break;
    }
    --budget;
    std::size_t i = static_cast<std::size_t>(rng() % pool.size());
    if (auto in = solve(*pool[i])) {
      take(*pool[i], std::move(*in));
    } else {
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  return out;
}

StateSample fuzz_states(const Program& p, const LocationInfo& view, std::size_t n, const Int& lo, const Int& hi,
                        std::uint64_t seed, std::size_t max_runs) {
  const LocationInfo& full = p.location(view.label);
  if (lo > hi) throw std::invalid_argument("fuzz_states: empty range");
  Int width = hi - lo + 1;
  if (!width.fits_ulong_p()) throw std::invalid_argument("fuzz_states: range too wide");
  const unsigned long w = width.get_ui();
  if (max_runs == 0) max_runs = 20 * n + 200;
  StateSample out;
  for (std::size_t i = 0; i < p.params.size(); ++i) out.block.symbols.push_back(static_cast<VarId>(i));
  std::mt19937_64 rng(seed);
  for (std::size_t run = 0; run < max_runs && out.states.size() < n; ++run) {
    std::vector<Int> in;
    for (std::size_t i = 0; i < p.params.size(); ++i) in.push_back(lo + Int(rng() % w));
    if (!out.block.add(in)) continue;
    Trace t = interpret(p, in, view.label);
    for (const auto& s : t.states) {
      if (out.states.size() >= n) break;
      out.add(project(s, full, view), in);
    }
  }
  if (out.states.size() < n) out.exhausted = true;
  return out;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<ConcreteState>& states) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& s : states) {
    for (std::size_t i = 0; i < s.values.size(); ++i) os << (i ? "," : "") << s.values[i].get_str();
    os << '\n';
  }
}

}  // namespace syminfer
