#include "syminfer/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace syminfer {

Monomial Monomial::var(VarId v, unsigned exp) {
  Monomial m;
  if (exp > 0) {
    m.factors_.emplace_back(v, exp);
    m.degree_ = exp;
  }
  return m;
}

Monomial Monomial::from_exponents(std::span<const unsigned> exps) {
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 0) {
      m.factors_.emplace_back(static_cast<VarId>(i), exps[i]);
      m.degree_ += exps[i];
    }
  }
  return m;
}

unsigned Monomial::exponent(VarId v) const {
  for (const auto& [var, e] : factors_) {
    if (var == v) return e;
    if (var > v) break;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.degree_ = degree_ + o.degree_;
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

std::vector<unsigned> Monomial::exponents(std::size_t n) const {
  std::vector<unsigned> out(n, 0);
  for (const auto& [v, e] : factors_) {
    if (v >= n) throw std::out_of_range("monomial variable outside exponent range");
    out[v] = e;
  }
  return out;
}

Monomial Monomial::shifted(VarId offset) const {
  Monomial r = *this;
  for (auto& f : r.factors_) f.first += offset;
  return r;
}

Monomial Monomial::without(VarId v) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first == v) continue;
    r.factors_.push_back(f);
    r.degree_ += f.second;
  }
  return r;
}

Int Monomial::eval(std::span<const Int> values) const {
  Int r = 1;
  for (const auto& [v, e] : factors_) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), values[v].get_mpz_t(), e);
    r *= p;
  }
  return r;
}

bool TermOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) {
      // the monomial carrying the lower variable comes first
      return fa[i].first < fb[i].first;
    }
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
  }
  // equal degree and identical prefix means identical monomials
  return false;
}

Poly::Poly(const Int& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::var(VarId v) { return term(1, Monomial::var(v)); }

Poly Poly::term(const Int& c, const Monomial& m) {
  Poly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Int Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Int(0) : it->second;
}

unsigned Poly::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

unsigned Poly::degree_in(VarId v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

std::set<VarId> Poly::variables() const {
  std::set<VarId> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Int prod = ca * cb;
      auto [it, inserted] = r.terms_.emplace(ma * mb, prod);
      if (!inserted) {
        it->second += prod;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::scaled(const Int& c) const {
  if (c == 0) return {};
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

Int Poly::eval(std::span<const Int> values) const {
  Int r = 0;
  for (const auto& [m, c] : terms_) r += c * m.eval(values);
  return r;
}

Poly Poly::substitute(VarId v, const Poly& replacement) const {
  auto coeffs = coefficients_in(v);
  // Horner evaluation in the replacement
  Poly r;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * replacement + *it;
  return r;
}

Poly Poly::shifted(VarId offset) const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m.shifted(offset), c);
  return r;
}

Poly Poly::renamed(const std::function<VarId(VarId)>& map) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Poly t(c);
    for (const auto& [v, e] : m.factors()) t *= term(1, Monomial::var(map(v), e));
    r += t;
  }
  return r;
}

std::vector<Poly> Poly::coefficients_in(VarId v) const {
  std::vector<Poly> out(degree_in(v) + 1);
  for (const auto& [m, c] : terms_) out[m.exponent(v)] += term(c, m.without(v));
  return out;
}

Poly Poly::from_coefficients_in(VarId v, std::span<const Poly> coeffs) {
  Poly r;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    r += coeffs[j] * term(1, Monomial::var(v, static_cast<unsigned>(j)));
  return r;
}

Int Poly::content() const {
  Int g = 0;
  for (const auto& [m, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Poly Poly::divided_exact(const Int& d) const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  return r;
}

Int Poly::leading_coefficient() const {
  const Int* best = nullptr;
  unsigned deg = 0;
  for (const auto& [m, c] : terms_) {
    if (!best || m.degree() > deg) {
      best = &c;
      deg = m.degree();
    }
  }
  return best ? *best : Int(0);
}

std::string Poly::to_string(const NameFn& name) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<const Monomial*, const Int*>> ordered;
  for (const auto& [m, c] : terms_) ordered.emplace_back(&m, &c);
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.first->degree() > b.first->degree();
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    bool neg = sgn(*c) < 0;
    Int mag = abs(*c);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (const auto& [v, e] : m->factors()) {
      for (unsigned i = 0; i < e; ++i) {
        if (!factors.empty()) factors += "*";
        factors += name(v);
      }
    }
    if (factors.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += factors;
    } else {
      out += mag.get_str() + "*" + factors;
    }
  }
  return out;
}

std::optional<Poly> divide_by_linear(const Poly& p, VarId v, const Poly& root) {
  auto c = p.coefficients_in(v);
  if (c.size() < 2) {
    if (p.is_zero()) return Poly{};
    return std::nullopt;
  }
  std::size_t d = c.size() - 1;
  std::vector<Poly> q(d);
  q[d - 1] = c[d];
  for (std::size_t j = d - 1; j > 0; --j) q[j - 1] = c[j] + root * q[j];
  Poly rem = c[0] + root * q[0];
  if (!rem.is_zero()) return std::nullopt;
  return Poly::from_coefficients_in(v, q);
}

std::string default_var_name(VarId v) { return "v" + std::to_string(v); }

}  // namespace syminfer
