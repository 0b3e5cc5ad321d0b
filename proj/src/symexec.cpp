#include "syminfer/symexec.hpp"

#include <cstdio>
#include <stdexcept>

namespace syminfer {

Formula SymState::path_condition() const {
  std::vector<Formula> parts;
  parts.reserve(pc.size());
  for (const auto& c : pc) parts.push_back(c.cond);
  return Formula::conj(std::move(parts));
}

std::vector<const SymState*> SymStateSet::upto(int bound) const {
  std::vector<const SymState*> out;
  for (const auto& s : states)
    if (s.depth <= bound) out.push_back(&s);
  return out;
}

Poly sym_eval(const AExpr& e, const std::vector<std::optional<Poly>>& env) {
  switch (e.kind) {
    case AExpr::Kind::Var: {
      const auto& v = env.at(static_cast<std::size_t>(e.var));
      if (!v) throw std::logic_error("read of undefined variable '" + e.name + "'");
      return *v;
    }
    case AExpr::Kind::Const: return Poly(e.value);
    case AExpr::Kind::Neg: return -sym_eval(e.args[0], env);
    case AExpr::Kind::Add: return sym_eval(e.args[0], env) + sym_eval(e.args[1], env);
    case AExpr::Kind::Sub: return sym_eval(e.args[0], env) - sym_eval(e.args[1], env);
    case AExpr::Kind::Mul: return sym_eval(e.args[0], env) * sym_eval(e.args[1], env);
  }
  return {};
}

std::string input_name(VarId i) { return "X" + std::to_string(i + 1); }

std::string program_hash(const Program& p) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : pretty_print(p)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

class Executor {
 public:
  Executor(SymStateSet& set, int bound, FeasibilityOracle& feas, const ExecOptions& opts)
      : set_(set), bound_(bound), feas_(feas), opts_(opts) {}

  void run(std::vector<PathCursor> work) {
    // reversed so the first cursor is explored first
    std::vector<PathCursor> stack(std::make_move_iterator(work.rbegin()), std::make_move_iterator(work.rend()));
    while (!stack.empty()) {
      PathCursor c = std::move(stack.back());
      stack.pop_back();
      advance(std::move(c), stack);
    }
  }

  std::vector<PathCursor> take_frontier() { return std::move(frontier_); }

 private:
  SymStateSet& set_;
  int bound_;
  FeasibilityOracle& feas_;
  const ExecOptions& opts_;
  std::vector<PathCursor> frontier_;

  FeasibilityResult query(const PathCursor& c, const Formula& extra) {
    std::vector<Formula> parts;
    parts.reserve(c.pc.size() + 1);
    for (const auto& pc : c.pc) parts.push_back(pc.cond);
    parts.push_back(extra);
    ++set_.feasibility_queries;
    return feas_.check(Formula::conj(std::move(parts)));
  }

  void snapshot(PathCursor& c) {
    SymState s;
    s.loc = set_.loc;
    s.env = c.env;
    s.pc = c.pc;
    s.depth = c.depth;
    s.path = c.path + "#" + std::to_string(c.visits++);
    s.witness = c.witness;
    set_.states.push_back(std::move(s));
  }

  Formula condition(const PathCursor& c, const BExpr& b) const {
    return to_formula(b, [&](const AExpr& e) { return sym_eval(e, c.env); });
  }

  // Decides a two-way branch. `apply(cursor, outcome)` moves the cursor past
  // the branch. Returns the cursor to keep executing, if any.
  template <typename Apply>
  std::optional<PathCursor> branch(PathCursor c, const Formula& cond, int line, Apply apply,
                                   std::vector<PathCursor>& stack) {
    if (auto k = cond.constant()) {
      apply(c, *k);
      return c;
    }
    Formula neg = Formula::negation(cond);
    FeasibilityResult yes;
    FeasibilityResult no;
    if (c.witness) {
      bool w = cond.eval(*c.witness);
      FeasibilityResult carried{Feasibility::Sat, *c.witness};
      if (w) {
        yes = carried;
        no = query(c, neg);
      } else {
        no = carried;
        yes = query(c, cond);
      }
    } else {
      yes = query(c, cond);
      no = query(c, neg);
    }
    bool yes_ok = yes.status != Feasibility::Unsat;
    bool no_ok = no.status != Feasibility::Unsat;
    if (yes_ok && no_ok) {
      PathCursor other = c;
      auto fork = [&](PathCursor& cur, bool outcome, const Formula& f, FeasibilityResult& r) {
        cur.pc.push_back({f, true, line});
        cur.depth += 1;
        cur.path += outcome ? 'T' : 'F';
        if (r.status == Feasibility::Sat) {
          cur.witness = std::move(r.model);
        } else {
          cur.witness.reset();
        }
        apply(cur, outcome);
      };
      fork(c, true, cond, yes);
      fork(other, false, neg, no);
      if (c.depth > bound_) {
        frontier_.push_back(std::move(c));
        frontier_.push_back(std::move(other));
      } else {
        stack.push_back(std::move(other));
        stack.push_back(std::move(c));
      }
      return std::nullopt;
    }
    if (!yes_ok && !no_ok) return std::nullopt;
    bool outcome = yes_ok;
    FeasibilityResult& r = outcome ? yes : no;
    if (r.status == Feasibility::Unknown) {
      // only reachable without a witness; keep the constraint explicit
      c.pc.push_back({outcome ? cond : neg, false, line});
    } else if (!c.witness) {
      c.witness = std::move(r.model);
    }
    apply(c, outcome);
    return c;
  }

  void advance(PathCursor c, std::vector<PathCursor>& stack) {
    while (!c.frames.empty()) {
      auto& frame = c.frames.back();
      if (frame.index >= frame.block->size()) {
        c.frames.pop_back();
        continue;
      }
      const Stmt& s = (*frame.block)[frame.index];
      if (++c.steps > opts_.max_steps_per_path) {
        set_.truncated = true;
        return;
      }
      switch (s.kind) {
        case Stmt::Kind::Assume: {
          Formula f = condition(c, s.cond);
          if (auto k = f.constant()) {
            if (!*k) return;
          } else if (!(c.witness && f.eval(*c.witness))) {
            FeasibilityResult r = query(c, f);
            if (r.status == Feasibility::Unsat) return;
            if (r.status == Feasibility::Sat) {
              c.witness = std::move(r.model);
            } else {
              c.witness.reset();
            }
            c.pc.push_back({f, false, s.line});
          } else {
            c.pc.push_back({f, false, s.line});
          }
          ++frame.index;
          break;
        }
        case Stmt::Kind::Decl:
          for (std::size_t i = 0; i < s.decls.size(); ++i) {
            auto id = static_cast<std::size_t>(s.decl_vars[i]);
            if (s.decls[i].second) {
              c.env[id] = sym_eval(*s.decls[i].second, c.env);
            } else {
              c.env[id].reset();
            }
          }
          ++frame.index;
          break;
        case Stmt::Kind::Assign:
          c.env[static_cast<std::size_t>(s.target_var)] = sym_eval(s.value, c.env);
          ++frame.index;
          break;
        case Stmt::Kind::LocMark:
          if (s.label == set_.loc) snapshot(c);
          ++frame.index;
          break;
        case Stmt::Kind::If: {
          Formula f = condition(c, s.cond);
          auto apply = [&s](PathCursor& cur, bool outcome) {
            ++cur.frames.back().index;
            const auto& blk = outcome ? s.body : s.orelse;
            cur.frames.push_back({&blk, 0});
          };
          auto next = branch(std::move(c), f, s.line, apply, stack);
          if (!next) return;
          c = std::move(*next);
          break;
        }
        case Stmt::Kind::While: {
          if (s.label == set_.loc) snapshot(c);
          Formula f = condition(c, s.cond);
          auto apply = [&s](PathCursor& cur, bool outcome) {
            if (outcome) {
              cur.frames.push_back({&s.body, 0});
            } else {
              ++cur.frames.back().index;
            }
          };
          auto next = branch(std::move(c), f, s.line, apply, stack);
          if (!next) return;
          c = std::move(*next);
          break;
        }
      }
    }
  }
};

}  // namespace

SymStateSet exec_to_depth(std::shared_ptr<const Program> program, const std::string& loc, int k,
                          FeasibilityOracle& feas, const ExecOptions& opts) {
  if (k < 0) throw std::invalid_argument("exec_to_depth: negative depth bound");
  program->location(loc);  // throws on unknown labels
  SymStateSet set;
  set.program = program;
  set.loc = loc;
  set.k = k;
  PathCursor start;
  start.frames.push_back({&program->body, 0});
  start.env.resize(program->vars.size());
  for (std::size_t i = 0; i < program->params.size(); ++i) start.env[i] = Poly::var(static_cast<VarId>(i));
  start.witness = std::vector<Int>(program->params.size(), Int(0));
  Executor ex(set, k, feas, opts);
  ex.run({std::move(start)});
  set.frontier = ex.take_frontier();
  return set;
}

SymStateSet extend(const SymStateSet& set, int k, FeasibilityOracle& feas, const ExecOptions& opts) {
  if (k <= set.k) throw std::invalid_argument("extend: new bound must exceed the current bound");
  SymStateSet out;
  out.program = set.program;
  out.loc = set.loc;
  out.k = k;
  out.states = set.states;
  out.truncated = set.truncated;
  out.feasibility_queries = set.feasibility_queries;
  Executor ex(out, k, feas, opts);
  ex.run(set.frontier);
  out.frontier = ex.take_frontier();
  return out;
}

}  // namespace syminfer
