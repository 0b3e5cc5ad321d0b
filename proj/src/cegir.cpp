#include "syminfer/cegir.hpp"

#include <algorithm>
#include <cmath>

namespace syminfer {

Deadline::Deadline(double seconds) {
  if (seconds > 0)
    end_ = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
}

bool Deadline::expired() const { return end_ && std::chrono::steady_clock::now() >= *end_; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Invariant: return "invariant";
    case Verdict::Refuted: return "refuted";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

Formula map_vars(const Formula& f, const std::function<VarId(VarId)>& m) {
  Formula r = f;
  if (r.kind == Formula::Kind::Atom) r.poly = f.poly.renamed(m);
  for (auto& g : r.args) g = map_vars(g, m);
  return r;
}

}  // namespace

LocationEngine::LocationEngine(std::shared_ptr<const Program> program, std::string loc, Solver& solver,
                               EngineConfig cfg)
    : program_(std::move(program)),
      loc_(std::move(loc)),
      info_(program_->location(loc_)),
      solver_(solver),
      cfg_(std::move(cfg)),
      feas_(std::make_unique<SolverFeasibility>(solver, program_->params.size())) {
  if (cfg_.vars.empty()) return;
  std::vector<int> keep;
  for (int v : info_.vars) {
    const std::string& n = program_->vars[static_cast<std::size_t>(v)];
    if (std::find(cfg_.vars.begin(), cfg_.vars.end(), n) != cfg_.vars.end()) keep.push_back(v);
  }
  for (const auto& n : cfg_.vars) {
    int id = program_->var_index(n);
    if (id < 0 || std::find(keep.begin(), keep.end(), id) == keep.end())
      throw std::invalid_argument("variable '" + n + "' is not available at location " + loc_);
  }
  info_.vars = std::move(keep);
}

std::vector<std::string> LocationEngine::var_names() const { return program_->var_names(info_.vars); }

NameFn LocationEngine::name_fn() const {
  auto names = var_names();
  return [names](VarId v) { return names.at(v); };
}

std::string LocationEngine::smt_name(VarId pos) const {
  return VcSymbols{program_.get()}.smt_name(VcSymbols{program_.get()}.var(info_.vars.at(pos)));
}

Formula LocationEngine::to_vc(const Formula& f) const {
  VcSymbols vc{program_.get()};
  return map_vars(f, [&](VarId pos) { return vc.var(info_.vars.at(pos)); });
}

const SymStateSet& LocationEngine::states(int k) {
  if (!set_ || set_->k < k) {
    auto start = std::chrono::steady_clock::now();
    set_ = set_ ? extend(*set_, k, *feas_, cfg_.exec) : exec_to_depth(program_, loc_, k, *feas_, cfg_.exec);
    exec_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  VcSymbols vc{program_.get()};
  for (std::size_t i = encoded_.size(); i < set_->states.size(); ++i)
    encoded_.push_back(encode_state(set_->states[i], info_.vars, vc));
  return *set_;
}

SmtVerdict LocationEngine::implication(const Formula& lhs, const Formula& rhs) {
  VcSymbols vc{program_.get()};
  return solver_.check_implication(to_vc(lhs), to_vc(rhs), [&](VarId id) { return vc.smt_name(id); });
}

VerifyOutcome LocationEngine::verify(const Formula& cand, const BlockSet& block, std::optional<int> k0) {
  ++verify_calls_;
  VcSymbols vc{program_.get()};
  auto names = [&](VarId id) { return vc.smt_name(id); };
  BlockSet excl;
  for (int v : info_.vars) excl.symbols.push_back(vc.var(v));
  excl.points = block.points;
  const Formula exclusion = excl.exclusion();
  const Formula violation = Formula::negation(to_vc(cand));

  VerifyOutcome out;
  std::optional<Verdict> prev;
  int k = k0.value_or(cfg_.start_depth);
  while (true) {
    const SymStateSet& set = states(k);
    std::vector<Formula> disjuncts;
    for (std::size_t i = 0; i < set.states.size(); ++i)
      if (set.states[i].depth <= k) disjuncts.push_back(encoded_[i]);
    if (disjuncts.empty()) {
      out.status = Verdict::Unknown;
      out.settled_depth = k;
      out.diagnostic = "location " + loc_ + " is not reached within depth " + std::to_string(k);
      return out;
    }
    Formula q = Formula::conj({Formula::disj(std::move(disjuncts)), exclusion, violation});
    SmtVerdict v = solver_.check_sat(q, names);
    Verdict cur = v.sat() ? Verdict::Refuted : v.unsat() ? Verdict::Invariant : Verdict::Unknown;
    if (cur == Verdict::Refuted) {
      out.status = cur;
      out.settled_depth = k;
      out.transcript = v.transcript;
      ConcreteState s;
      s.loc = loc_;
      for (int var : info_.vars) {
        auto it = v.model.find(vc.var(var));
        s.values.push_back(it == v.model.end() ? Int(0) : it->second);
      }
      std::vector<Int> inputs(program_->params.size(), Int(0));
      for (const auto& [sym, val] : v.model)
        if (sym < inputs.size()) inputs[sym] = val;
      if (cand.eval(s.values)) throw std::logic_error("solver model does not violate the candidate");
      out.cex.push_back(std::move(s));
      out.cex_inputs.push_back(std::move(inputs));
      return out;
    }
    if (prev && *prev == cur) {
      out.settled_depth = k - 1;
      if (cur == Verdict::Unknown) out.diagnostic = "unknown at depths " + std::to_string(k - 1) + " and " + std::to_string(k);
      return out;
    }
    prev = cur;
    out.status = cur;
    out.transcript = v.transcript;
    if (cur == Verdict::Unknown) out.diagnostic = "solver " + v.reason + " at depth " + std::to_string(k);
    if (k >= cfg_.max_depth) {
      out.ceiling = true;
      out.settled_depth = k;
      return out;
    }
    ++k;
  }
}

Candidate Candidate::equality(EqInvariant e) {
  Candidate c;
  c.kind = Kind::Eq;
  c.eq = std::move(e);
  return c;
}

Candidate Candidate::inequality(Inequality i) {
  Candidate c;
  c.kind = Kind::Ineq;
  c.ineq = std::move(i);
  return c;
}

Formula Candidate::formula() const {
  if (kind == Kind::Eq) return Formula::atom(eq.poly, CmpOp::Eq);
  return Formula::atom(ineq.term.poly(), CmpOp::Le, Poly(ineq.bound));
}

std::string Candidate::to_string(const NameFn& name) const {
  return kind == Kind::Eq ? eq.to_string(name) : ineq.to_string(name);
}

EqtsResult cegir_eqts(LocationEngine& engine, unsigned degree, const CegirOptions& opts) {
  EqtsResult res;
  const std::vector<Monomial> terms = create_terms(engine.num_vars(), degree, opts.term_cap);
  res.terms = terms.size();
  const auto wanted = static_cast<std::size_t>(std::ceil(static_cast<double>(terms.size()) * opts.oversample));
  const int d = engine.config().start_depth;
  if (opts.bootstrap == Bootstrap::Symbolic) {
    res.sample = gen_states(engine.program(), engine.info(), engine.states(d), d, wanted, engine.solver(), {opts.seed});
  } else {
    res.sample = fuzz_states(engine.program(), engine.info(), wanted, opts.fuzz_lo, opts.fuzz_hi, opts.seed);
  }
  if (res.sample.states.empty()) return res;

  BlockSet block;
  RowEchelon settled(terms.size());  // span of proved and undecided candidates
  auto points = res.sample.points();
  while (true) {
    if (opts.deadline && opts.deadline->expired()) {
      res.timeout = true;
      break;
    }
    ++res.iterations;
    std::vector<EqInvariant> cands;
    RowEchelon span = settled;
    auto t0 = std::chrono::steady_clock::now();
    auto inferred = infer_eqts(terms, points);
    res.infer_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& e : inferred)
      if (span.add(coefficient_row(e.poly, terms))) cands.push_back(std::move(e));
    if (cands.empty()) break;
    std::vector<std::pair<ConcreteState, std::vector<Int>>> cexs;
    for (auto& e : cands) {
      if (opts.deadline && opts.deadline->expired()) {
        res.timeout = true;
        break;
      }
      Candidate c = Candidate::equality(std::move(e));
      c.outcome = engine.verify(c.formula(), block);
      switch (c.outcome.status) {
        case Verdict::Invariant:
          c.is_inv = true;
          settled.add(coefficient_row(c.eq.poly, terms));
          res.proved.push_back(std::move(c));
          break;
        case Verdict::Refuted:
          ++res.refuted;
          for (std::size_t i = 0; i < c.outcome.cex.size(); ++i)
            cexs.emplace_back(c.outcome.cex[i], c.outcome.cex_inputs[i]);
          break;
        case Verdict::Unknown:
          settled.add(coefficient_row(c.eq.poly, terms));
          res.unknown.push_back(std::move(c));
          break;
      }
    }
    if (res.timeout || cexs.empty()) break;
    for (auto& [s, in] : cexs) {
      block.add(s.values);
      points.push_back(s.values);
      res.sample.add(std::move(s), std::move(in));
    }
  }
  return res;
}

OctResult cegir_oct(LocationEngine& engine, const OctTerm& term, const Int& min_v, const Int& max_v,
                    const BlockSet& block) {
  if (min_v > max_v) throw std::invalid_argument("cegir_oct: empty range");
  OctResult r;
  const Poly t = term.poly();
  auto check = [&](const Int& c) {
    ++r.verify_calls;
    VerifyOutcome o = engine.verify(Formula::atom(t, CmpOp::Le, Poly(c)), block);
    if (o.status == Verdict::Unknown) r.saw_unknown = true;
    return o;
  };
  VerifyOutcome best = check(max_v);
  if (best.status != Verdict::Invariant) return r;
  Int lo = min_v;
  Int hi = max_v;
  while (hi - lo > 1) {
    Int mid = lo + Int(hi - lo + 1) / 2;
    VerifyOutcome o = check(mid);
    if (o.status == Verdict::Invariant) {
      hi = mid;
      best = std::move(o);
    } else if (o.status == Verdict::Refuted) {
      Int c = term.eval(o.cex.front().values);
      lo = c < hi ? c : hi;
    } else {
      lo = mid + 1;
    }
  }
  if (lo < hi) {
    VerifyOutcome o = check(lo);
    if (o.status == Verdict::Invariant) {
      hi = lo;
      best = std::move(o);
    }
  }
  r.ineq = Inequality{term, hi};
  r.proof = std::move(best);
  return r;
}

std::vector<Candidate> remove_redundant(LocationEngine& engine, std::vector<Candidate> invs) {
  std::vector<bool> alive(invs.size(), true);
  std::vector<std::size_t> order;
  for (std::size_t i = invs.size(); i-- > 0;)
    if (invs[i].kind == Candidate::Kind::Ineq) order.push_back(i);
  for (std::size_t i = invs.size(); i-- > 0;)
    if (invs[i].kind == Candidate::Kind::Eq) order.push_back(i);
  for (std::size_t i : order) {
    std::vector<Formula> rest;
    for (std::size_t j = 0; j < invs.size(); ++j)
      if (j != i && alive[j]) rest.push_back(invs[j].formula());
    if (rest.empty()) continue;
    if (engine.implication(Formula::conj(std::move(rest)), invs[i].formula()).unsat()) alive[i] = false;
  }
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < invs.size(); ++i)
    if (alive[i]) out.push_back(std::move(invs[i]));
  return out;
}

}  // namespace syminfer
