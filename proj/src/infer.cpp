#include "syminfer/infer.hpp"

#include <algorithm>
#include <set>

#include "syminfer/formula.hpp"

namespace syminfer {

std::size_t term_count(std::size_t n, unsigned d) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n + d, d);
  return c.fits_ulong_p() ? c.get_ui() : static_cast<std::size_t>(-1);
}

std::vector<Monomial> create_terms(std::size_t n, unsigned d, std::size_t cap) {
  if (d < 1) throw std::invalid_argument("create_terms: degree must be at least 1");
  std::size_t count = term_count(n, d);
  if (count > cap)
    throw TermCapError("degree " + std::to_string(d) + " over " + std::to_string(n) + " variables gives " +
                       std::to_string(count) + " terms (cap " + std::to_string(cap) +
                       "); lower the degree or designate fewer variables");
  std::vector<Monomial> out;
  std::vector<unsigned> exps(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == n) {
      out.push_back(Monomial::from_exponents(exps));
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      exps[i] = e;
      self(self, i + 1, left - e);
    }
    exps[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), TermOrder{});
  return out;
}

Poly canonical(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = p.divided_exact(p.content());
  return sgn(q.leading_coefficient()) < 0 ? -q : q;
}

std::string EqInvariant::to_string(const NameFn& name) const {
  return Formula::atom(poly, CmpOp::Eq).to_string(name);
}

std::vector<Rat> RowEchelon::reduce(std::vector<Rat> row) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rat f = row[pivots_[r]];
    if (sgn(f) == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(rows_[r][c]) != 0) row[c] -= f * rows_[r][c];
  }
  return row;
}

bool RowEchelon::add(const std::vector<Rat>& input) {
  std::vector<Rat> row = reduce(input);
  std::size_t p = 0;
  while (p < cols_ && sgn(row[p]) == 0) ++p;
  if (p == cols_) return false;
  const Rat lead = row[p];
  for (auto& x : row) x /= lead;
  for (auto& other : rows_) {
    const Rat f = other[p];
    if (sgn(f) == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(row[c]) != 0) other[c] -= f * row[c];
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(p);
  return true;
}

bool RowEchelon::in_span(const std::vector<Rat>& row) const {
  auto r = reduce(row);
  return std::all_of(r.begin(), r.end(), [](const Rat& x) { return sgn(x) == 0; });
}

std::vector<std::vector<Int>> RowEchelon::nullspace() const {
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<std::vector<Int>> out;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(cols_, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][f];
    Int den = 1;
    for (const auto& x : v) den = lcm(den, Int(x.get_den()));
    std::vector<Int> iv(cols_);
    Int g = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      Rat s = v[c] * den;
      iv[c] = s.get_num();
      g = gcd(g, iv[c]);
    }
    for (auto& x : iv) x /= g;
    out.push_back(std::move(iv));
  }
  return out;
}

std::vector<std::vector<Int>> term_matrix(const std::vector<Monomial>& terms,
                                          const std::vector<std::vector<Int>>& points) {
  std::set<std::vector<Int>> seen;
  std::vector<std::vector<Int>> rows;
  for (const auto& pt : points) {
    if (!seen.insert(pt).second) continue;
    std::vector<Int> row;
    row.reserve(terms.size());
    for (const auto& t : terms) row.push_back(t.eval(pt));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<EqInvariant> infer_eqts(const std::vector<Monomial>& terms, const std::vector<std::vector<Int>>& points) {
  RowEchelon ech(terms.size());
  for (const auto& row : term_matrix(terms, points)) {
    std::vector<Rat> r(row.begin(), row.end());
    ech.add(r);
    if (ech.rank() == terms.size()) break;
  }
  std::vector<EqInvariant> out;
  for (const auto& v : ech.nullspace()) {
    Poly p;
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (sgn(v[i]) != 0) p += Poly::term(v[i], terms[i]);
    out.push_back({canonical(p)});
  }
  return out;
}

std::vector<EqInvariant> infer_eqts(const std::vector<Monomial>& terms, const std::vector<ConcreteState>& states) {
  std::vector<std::vector<Int>> points;
  points.reserve(states.size());
  for (const auto& s : states) points.push_back(s.values);
  return infer_eqts(terms, points);
}

std::vector<Rat> coefficient_row(const Poly& p, const std::vector<Monomial>& terms) {
  std::vector<Rat> row(terms.size(), Rat(0));
  std::size_t matched = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto it = p.terms().find(terms[i]);
    if (it != p.terms().end()) {
      row[i] = it->second;
      ++matched;
    }
  }
  if (matched != p.terms().size()) throw std::invalid_argument("coefficient_row: polynomial has a term outside the set");
  return row;
}

Poly OctTerm::poly() const {
  Poly p = Poly::var(static_cast<VarId>(a)).scaled(sa);
  if (binary) p += Poly::var(static_cast<VarId>(b)).scaled(sb);
  return p;
}

Int OctTerm::eval(const std::vector<Int>& values) const {
  Int v = values.at(a) * sa;
  if (binary) v += values.at(b) * sb;
  return v;
}

std::string OctTerm::to_string(const NameFn& name) const { return poly().to_string(name); }

std::vector<OctTerm> oct_terms(std::size_t n) {
  std::vector<OctTerm> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({i, 1, false, 0, 1});
    out.push_back({i, -1, false, 0, 1});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.push_back({i, 1, true, j, -1});
      out.push_back({i, -1, true, j, 1});
      out.push_back({i, 1, true, j, 1});
      out.push_back({i, -1, true, j, -1});
    }
  }
  return out;
}

std::string Inequality::to_string(const NameFn& name) const {
  return Formula::atom(term.poly(), CmpOp::Le, Poly(bound)).to_string(name);
}

std::vector<Inequality> oct_bounds_from_states(const std::vector<std::vector<Int>>& points, std::size_t n) {
  if (points.empty()) throw std::invalid_argument("oct_bounds_from_states: no states");
  std::vector<Inequality> out;
  for (const auto& t : oct_terms(n)) {
    Int best = t.eval(points.front());
    for (const auto& pt : points) best = std::max(best, Int(t.eval(pt)));
    out.push_back({t, best});
  }
  return out;
}

}  // namespace syminfer
