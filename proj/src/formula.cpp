#include "syminfer/formula.hpp"

#include <algorithm>

namespace syminfer {

namespace {

bool holds(int sign, CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return sign == 0;
    case CmpOp::Ne: return sign != 0;
    case CmpOp::Lt: return sign < 0;
    case CmpOp::Le: return sign <= 0;
    case CmpOp::Gt: return sign > 0;
    case CmpOp::Ge: return sign >= 0;
  }
  return false;
}

// The operator obtained by multiplying both sides by -1.
CmpOp flip(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Le: return CmpOp::Ge;
    case CmpOp::Gt: return CmpOp::Lt;
    case CmpOp::Ge: return CmpOp::Le;
    default: return op;
  }
}

}  // namespace

Formula Formula::truth(bool b) {
  Formula f;
  f.kind = b ? Kind::True : Kind::False;
  return f;
}

Formula Formula::atom(const Poly& lhs, CmpOp op, const Poly& rhs) {
  Poly p = lhs - rhs;
  if (p.is_constant()) return truth(holds(sgn(p.constant_term()), op));
  Formula f;
  f.kind = Kind::Atom;
  f.op = op;
  f.poly = std::move(p);
  return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
  std::vector<Formula> kept;
  for (auto& f : fs) {
    if (f.kind == Kind::False) return truth(false);
    if (f.kind == Kind::True) continue;
    if (f.kind == Kind::And) {
      for (auto& g : f.args) kept.push_back(std::move(g));
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (kept.empty()) return truth(true);
  if (kept.size() == 1) return std::move(kept.front());
  Formula r;
  r.kind = Kind::And;
  r.args = std::move(kept);
  return r;
}

Formula Formula::disj(std::vector<Formula> fs) {
  std::vector<Formula> kept;
  for (auto& f : fs) {
    if (f.kind == Kind::True) return truth(true);
    if (f.kind == Kind::False) continue;
    if (f.kind == Kind::Or) {
      for (auto& g : f.args) kept.push_back(std::move(g));
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (kept.empty()) return truth(false);
  if (kept.size() == 1) return std::move(kept.front());
  Formula r;
  r.kind = Kind::Or;
  r.args = std::move(kept);
  return r;
}

Formula Formula::conj(Formula a, Formula b) {
  std::vector<Formula> v;
  v.push_back(std::move(a));
  v.push_back(std::move(b));
  return conj(std::move(v));
}

Formula Formula::disj(Formula a, Formula b) {
  std::vector<Formula> v;
  v.push_back(std::move(a));
  v.push_back(std::move(b));
  return disj(std::move(v));
}

Formula Formula::negation(const Formula& f) {
  switch (f.kind) {
    case Kind::True: return truth(false);
    case Kind::False: return truth(true);
    case Kind::Atom: {
      Formula r = f;
      r.op = negate(f.op);
      return r;
    }
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.args.size());
      for (const auto& g : f.args) parts.push_back(negation(g));
      return f.kind == Kind::And ? disj(std::move(parts)) : conj(std::move(parts));
    }
  }
  return f;
}

std::optional<bool> Formula::constant() const {
  if (kind == Kind::True) return true;
  if (kind == Kind::False) return false;
  return std::nullopt;
}

bool Formula::eval(std::span<const Int> values) const {
  switch (kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return holds(sgn(poly.eval(values)), op);
    case Kind::And:
      return std::all_of(args.begin(), args.end(), [&](const Formula& f) { return f.eval(values); });
    case Kind::Or:
      return std::any_of(args.begin(), args.end(), [&](const Formula& f) { return f.eval(values); });
  }
  return false;
}

void Formula::collect_vars(std::set<VarId>& out) const {
  if (kind == Kind::Atom) {
    auto vs = poly.variables();
    out.insert(vs.begin(), vs.end());
  }
  for (const auto& f : args) f.collect_vars(out);
}

Formula Formula::shifted(VarId offset) const {
  Formula r = *this;
  if (kind == Kind::Atom) r.poly = poly.shifted(offset);
  for (auto& f : r.args) f = f.shifted(offset);
  return r;
}

std::string Formula::to_string(const NameFn& name) const {
  switch (kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: {
      Poly p = poly;
      CmpOp o = op;
      if (sgn(p.leading_coefficient()) < 0) {
        p = -p;
        o = flip(o);
      }
      Int c = p.constant_term();
      Poly lhs = p - Poly(c);
      return lhs.to_string(name) + " " + std::string(cmp_symbol(o)) + " " + Int(-c).get_str();
    }
    case Kind::And:
    case Kind::Or: {
      std::string sep = kind == Kind::And ? " && " : " || ";
      std::string out;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += sep;
        bool wrap = args[i].kind == Kind::And || args[i].kind == Kind::Or;
        out += wrap ? "(" + args[i].to_string(name) + ")" : args[i].to_string(name);
      }
      return out;
    }
  }
  return "";
}

Formula to_formula(const BExpr& e, const std::function<Poly(const AExpr&)>& term) {
  switch (e.kind) {
    case BExpr::Kind::True: return Formula::truth(true);
    case BExpr::Kind::False: return Formula::truth(false);
    case BExpr::Kind::Cmp: return Formula::atom(term(e.operands[0]), e.op, term(e.operands[1]));
    case BExpr::Kind::And: return Formula::conj(to_formula(e.args[0], term), to_formula(e.args[1], term));
    case BExpr::Kind::Or: return Formula::disj(to_formula(e.args[0], term), to_formula(e.args[1], term));
    case BExpr::Kind::Not: return Formula::negation(to_formula(e.args[0], term));
  }
  return Formula::truth(true);
}

const std::set<std::vector<Int>>& BlockSet::index() const {
  if (index_.size() != points.size()) index_ = {points.begin(), points.end()};
  return index_;
}

bool BlockSet::add(std::vector<Int> point) {
  if (contains(point)) return false;
  index_.insert(point);
  points.push_back(std::move(point));
  return true;
}

bool BlockSet::contains(const std::vector<Int>& point) const { return index().count(point) > 0; }

Formula BlockSet::exclusion() const {
  std::vector<Formula> parts;
  parts.reserve(points.size());
  for (const auto& pt : points) {
    std::vector<Formula> differs;
    for (std::size_t i = 0; i < symbols.size(); ++i)
      differs.push_back(Formula::atom(Poly::var(symbols[i]), CmpOp::Ne, Poly(pt[i])));
    parts.push_back(Formula::disj(std::move(differs)));
  }
  return Formula::conj(std::move(parts));
}

}  // namespace syminfer
