#include "syminfer/bounds.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "syminfer/infer.hpp"

namespace syminfer {

namespace {

Int horner(const std::vector<Int>& c, const Int& x) {
  Int acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Positive divisors of n > 0 by trial division; empty when n is too large.
std::vector<Int> divisors(const Int& n) {
  const Int limit("1000000000000");
  if (n > limit) return {};
  std::vector<Int> small;
  std::vector<Int> large;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

constexpr std::size_t kNodeLimit = 200'000;

struct Fitter {
  const std::vector<std::vector<Int>>& rows;   // monomial values per sample
  const std::vector<std::vector<Int>>& roots;  // candidate values per sample
  std::size_t width;
  std::size_t nodes = 0;

  // Calls accept(coefficients) on every consistent fit until it returns true.
  template <typename Accept>
  bool search(std::size_t i, const RowEchelon& m, const RowEchelon& aug, Accept& accept) {
    if (++nodes > kNodeLimit) return false;
    if (i == rows.size()) {
      std::vector<Rat> coef(width, Rat(0));
      for (std::size_t r = 0; r < aug.rows().size(); ++r) coef[aug.pivots()[r]] = aug.rows()[r][width];
      return accept(coef);
    }
    std::vector<Rat> base(rows[i].begin(), rows[i].end());
    for (const Int& v : roots[i]) {
      RowEchelon m2 = m;
      RowEchelon a2 = aug;
      m2.add(base);
      std::vector<Rat> ext = base;
      ext.push_back(Rat(v));
      a2.add(ext);
      if (a2.rank() != m2.rank()) continue;
      if (search(i + 1, m2, a2, accept)) return true;
    }
    return false;
  }
};

}  // namespace

std::vector<Int> integer_roots(const std::vector<Int>& coeffs) {
  std::vector<Int> c = coeffs;
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  if (c.size() <= 1) return {};
  std::vector<Int> out;
  std::size_t low = 0;
  while (sgn(c[low]) == 0) ++low;
  if (low > 0) {
    out.push_back(0);
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (c.size() > 1) {
    for (const Int& d : divisors(abs(c[0]))) {
      if (sgn(horner(c, d)) == 0) out.push_back(d);
      if (sgn(horner(c, -d)) == 0) out.push_back(-d);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundSolution solve_counter(const Poly& eq, VarId t, const SolveOptions& opts) {
  if (eq.degree_in(t) == 0) throw std::invalid_argument("solve_counter: equality does not mention the counter");
  BoundSolution sol;
  auto coeffs = eq.coefficients_in(t);
  std::size_t low = 0;
  while (coeffs[low].is_zero()) ++low;
  if (low > 0) sol.roots.push_back({Poly(0), std::nullopt, 0});
  Poly q = Poly::from_coefficients_in(t, std::span<const Poly>(coeffs).subspan(low));

  std::vector<VarId> others;
  for (VarId v : eq.variables())
    if (v != t) others.push_back(v);
  const VarId top = others.empty() ? t : std::max(t, others.back());
  std::mt19937_64 rng(opts.seed);
  const auto span = static_cast<unsigned long>(opts.sample_hi - opts.sample_lo + 1);

  auto add_root = [&](const Poly& r) {
    for (const auto& x : sol.roots)
      if (x.value == r) return;
    sol.roots.push_back({r, std::nullopt, 0});
  };

  while (q.degree_in(t) >= 1) {
    std::optional<std::pair<Poly, Poly>> hit;  // root, quotient
    const auto qc = q.coefficients_in(t);
    for (unsigned deg = 0; deg <= opts.max_root_degree && !hit; ++deg) {
      const auto monos =
          others.empty() || deg == 0 ? std::vector<Monomial>{Monomial{}} : create_terms(others.size(), deg, 10'000);
      const std::size_t need = 2 * monos.size() + 6;
      std::vector<std::vector<Int>> rows;
      std::vector<std::vector<Int>> roots;
      bool impossible = false;
      for (std::size_t attempt = 0; rows.size() < need && attempt < 40 * need; ++attempt) {
        std::vector<Int> full(top + 1, Int(0));
        std::vector<Int> local;
        for (VarId v : others) {
          Int x = Int(opts.sample_lo) + Int(rng() % span);
          full[v] = x;
          local.push_back(x);
        }
        std::vector<Int> uni;
        for (const auto& c : qc) uni.push_back(c.eval(full));
        if (std::all_of(uni.begin(), uni.end(), [](const Int& x) { return sgn(x) == 0; })) continue;
        auto rs = integer_roots(uni);
        if (rs.empty()) {
          impossible = true;
          break;
        }
        std::vector<Int> row;
        for (const auto& m : monos) row.push_back(m.eval(local));
        rows.push_back(std::move(row));
        roots.push_back(std::move(rs));
      }
      if (impossible) break;
      if (rows.size() < need) continue;
      // Most constrained samples first.
      std::vector<std::size_t> order(rows.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return roots[a].size() < roots[b].size(); });
      std::vector<std::vector<Int>> srows;
      std::vector<std::vector<Int>> sroots;
      for (auto i : order) {
        srows.push_back(rows[i]);
        sroots.push_back(roots[i]);
      }
      Fitter fit{srows, sroots, monos.size()};
      auto accept = [&](const std::vector<Rat>& coef) {
        Poly r;
        for (std::size_t i = 0; i < coef.size(); ++i) {
          if (sgn(coef[i]) == 0) continue;
          if (coef[i].get_den() != 1) return false;
          Monomial m;
          for (const auto& [pos, e] : monos[i].factors()) m = m * Monomial::var(others[pos], e);
          r += Poly::term(coef[i].get_num(), m);
        }
        auto quotient = divide_by_linear(q, t, r);
        if (!quotient) return false;
        hit.emplace(std::move(r), std::move(*quotient));
        return true;
      };
      fit.search(0, RowEchelon(monos.size()), RowEchelon(monos.size() + 1), accept);
    }
    if (!hit) break;
    add_root(hit->first);
    q = std::move(hit->second);
  }
  if (q.degree_in(t) >= 1) sol.residual = q;
  return sol;
}

std::vector<Poly> counter_basis(const std::vector<Poly>& eqs, VarId t) {
  std::set<Monomial, TermOrder> with_t;
  std::set<Monomial, TermOrder> without_t;
  for (const auto& e : eqs)
    for (const auto& [m, c] : e.terms()) (m.exponent(t) > 0 ? with_t : without_t).insert(m);
  std::vector<Monomial> cols(without_t.begin(), without_t.end());
  cols.insert(cols.end(), with_t.begin(), with_t.end());
  RowEchelon ech(cols.size());
  for (const auto& e : eqs) ech.add(coefficient_row(e, cols));
  std::vector<std::pair<std::size_t, Poly>> rows;
  for (std::size_t r = 0; r < ech.rank(); ++r) {
    Int den = 1;
    for (const auto& x : ech.rows()[r]) den = lcm(den, Int(x.get_den()));
    Poly p;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Rat v = ech.rows()[r][c] * den;
      if (sgn(v) != 0) p += Poly::term(v.get_num(), cols[c]);
    }
    if (p.degree_in(t) > 0) rows.emplace_back(ech.pivots()[r], canonical(p));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Poly> out;
  for (auto& [pivot, p] : rows) out.push_back(std::move(p));
  return out;
}

void attach_guards(BoundSolution& sol, VarId t, const std::vector<VarId>& inputs,
                   const std::vector<std::vector<Int>>& states) {
  for (auto& r : sol.roots) {
    r.guard.reset();
    r.support = 0;
  }
  sol.ambiguous = false;
  if (sol.roots.size() < 2) return;

  std::vector<Formula> guards;
  for (VarId v : inputs) {
    Poly pv = Poly::var(v);
    for (CmpOp op : {CmpOp::Eq, CmpOp::Gt, CmpOp::Lt, CmpOp::Ge, CmpOp::Le}) guards.push_back(Formula::atom(pv, op));
  }
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (std::size_t j = i + 1; j < inputs.size(); ++j)
      for (CmpOp op : {CmpOp::Eq, CmpOp::Le, CmpOp::Gt, CmpOp::Lt, CmpOp::Ge})
        guards.push_back(Formula::atom(Poly::var(inputs[i]), op, Poly::var(inputs[j])));

  // owner[s]: index of the only root matching state s, or -1.
  std::vector<int> owner(states.size(), -1);
  for (std::size_t s = 0; s < states.size(); ++s) {
    int matches = 0;
    for (std::size_t r = 0; r < sol.roots.size(); ++r) {
      if (sol.roots[r].value.eval(states[s]) == states[s].at(t)) {
        ++matches;
        owner[s] = static_cast<int>(r);
      }
    }
    if (matches != 1) owner[s] = -1;
    if (matches > 1) sol.ambiguous = true;
  }
  for (std::size_t r = 0; r < sol.roots.size(); ++r) {
    for (int o : owner)
      if (o == static_cast<int>(r)) ++sol.roots[r].support;
    if (sol.roots[r].support == 0) continue;
    std::optional<std::size_t> best;
    std::size_t best_score = 0;
    bool best_clean = false;
    for (std::size_t g = 0; g < guards.size(); ++g) {
      bool covers = true;
      std::size_t excluded = 0;
      bool clean = true;
      for (std::size_t s = 0; s < states.size() && covers; ++s) {
        if (owner[s] < 0) continue;
        bool holds = guards[g].eval(states[s]);
        if (owner[s] == static_cast<int>(r)) {
          covers = holds;
        } else if (!holds) {
          ++excluded;
        } else {
          clean = false;
        }
      }
      if (covers && (!best || excluded > best_score)) {
        best = g;
        best_score = excluded;
        best_clean = clean;
      }
    }
    if (best) {
      sol.roots[r].guard = guards[*best];
      if (!best_clean) sol.ambiguous = true;
    } else {
      sol.ambiguous = true;
    }
  }
}

}  // namespace syminfer
