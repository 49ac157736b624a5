#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyzeta/common.hpp"

namespace cyzeta {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Sparse multivariate polynomial with rational coefficients.
class Poly {
 public:
  using Mono = std::vector<int>;
  using Terms = std::map<Mono, Rational>;

  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(const Rational& c, std::vector<std::string> vars = {}) {
    Poly p(std::move(vars));
    if (c != 0) p.terms_[Mono(p.vars_.size(), 0)] = c;
    return p;
  }
  static Poly variable(const std::string& name, int power = 1) {
    Poly p({name});
    p.terms_[Mono{power}] = 1;
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  int var_index(const std::string& v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
  }

  void add_term(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // Same polynomial expressed over `vars`, which must contain every used variable.
  Poly over(const std::vector<std::string>& vars) const {
    std::vector<int> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(vars.begin(), vars.end(), vars_[i]);
      if (it == vars.end()) {
        for (const auto& [m, c] : terms_)
          if (m[i] != 0) throw std::logic_error("variable " + vars_[i] + " dropped");
        map[i] = -1;
      } else {
        map[i] = static_cast<int>(it - vars.begin());
      }
    }
    Poly r(vars);
    for (const auto& [m, c] : terms_) {
      Mono nm(vars.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (map[i] >= 0) nm[map[i]] = m[i];
      r.terms_[nm] = c;
    }
    return r;
  }

  static std::vector<std::string> merged_vars(const Poly& a, const Poly& b) {
    std::vector<std::string> v = a.vars_;
    for (const auto& s : b.vars_)
      if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
    return v;
  }

  int degree(const std::string& v) const {
    int i = var_index(v);
    if (i < 0) return is_zero() ? -1 : 0;
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int e : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }
  bool is_constant() const { return total_degree() <= 0; }
  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }
  // Variables appearing with positive degree, in declaration order.
  std::vector<std::string> used_vars() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (const auto& [m, c] : terms_)
        if (m[i] > 0) {
          out.push_back(vars_[i]);
          break;
        }
    return out;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    auto v = merged_vars(a, b);
    Poly r = a.over(v);
    for (const auto& [m, c] : b.over(v).terms_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    auto v = merged_vars(a, b);
    Poly x = a.over(v), y = b.over(v), r(v);
    for (const auto& [ma, ca] : x.terms_)
      for (const auto& [mb, cb] : y.terms_) {
        Mono m(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend Poly operator*(const Poly& a, const Rational& s) {
    Poly r(a.vars_);
    if (s == 0) return r;
    for (const auto& [m, c] : a.terms_) r.terms_[m] = c * s;
    return r;
  }
  friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) {
    auto v = merged_vars(a, b);
    return a.over(v).terms_ == b.over(v).terms_;
  }

  Poly pow(int e) const {
    Poly r = constant(1, vars_), b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  Poly derivative(const std::string& v) const {
    int i = var_index(v);
    Poly r(vars_);
    if (i < 0) return r;
    for (const auto& [m, c] : terms_)
      if (m[i] > 0) {
        Mono nm = m;
        --nm[i];
        r.add_term(nm, c * m[i]);
      }
    return r;
  }

  // Coefficient of v^k, as a polynomial in the remaining variables (v kept with exponent 0).
  Poly coeff(const std::string& v, int k) const {
    int i = var_index(v);
    Poly r(vars_);
    for (const auto& [m, c] : terms_)
      if ((i < 0 ? 0 : m[i]) == k) {
        Mono nm = m;
        if (i >= 0) nm[i] = 0;
        r.terms_[nm] = c;
      }
    return r;
  }
  std::vector<Poly> coefficients(const std::string& v) const {
    int d = degree(v);
    std::vector<Poly> out;
    for (int k = 0; k <= d; ++k) out.push_back(coeff(v, k));
    return out;
  }
  Poly leading_coeff(const std::string& v) const { return coeff(v, degree(v)); }

  // Partial evaluation.
  Poly substitute(const std::map<std::string, Rational>& at) const {
    Poly r(vars_);
    for (const auto& [m, c] : terms_) {
      Rational cc = c;
      Mono nm = m;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = at.find(vars_[i]);
        if (it == at.end() || m[i] == 0) continue;
        Rational pw = 1;
        for (int e = 0; e < m[i]; ++e) pw *= it->second;
        cc *= pw;
        nm[i] = 0;
      }
      r.add_term(nm, cc);
    }
    return r;
  }
  // Replace variable v by polynomial g.
  Poly compose(const std::string& v, const Poly& g) const {
    int i = var_index(v);
    if (i < 0) return *this;
    Poly r = constant(0, vars_);
    auto cs = coefficients(v);
    Poly gp = constant(1);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (!cs[k].is_zero()) r += cs[k] * gp;
      gp *= g;
    }
    return r;
  }

  Rational evaluate(const std::map<std::string, Rational>& at) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (!at.count(vars_[i])) {
        for (const auto& [m, c] : terms_)
          if (m[i] != 0) throw DomainError("poly.unbound", "unbound variable " + vars_[i]);
      }
    Poly r = substitute(at);
    return r.is_zero() ? Rational(0) : r.terms_.begin()->second;
  }

  // Leading term in lex order on the declared variable order.
  std::pair<Mono, Rational> lex_leading() const { return *terms_.rbegin(); }

  // Leading coefficient in graded-lex order, used for sign normalization.
  Rational grlex_leading_coeff() const {
    auto t = grlex_terms();
    return t.empty() ? Rational(0) : t.front().second;
  }

  std::vector<std::pair<Mono, Rational>> grlex_terms() const {
    std::vector<std::pair<Mono, Rational>> t(terms_.begin(), terms_.end());
    std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) {
      int dx = 0, dy = 0;
      for (int e : x.first) dx += e;
      for (int e : y.first) dy += e;
      if (dx != dy) return dx > dy;
      return x.first > y.first;
    });
    return t;
  }

  // Integer coefficients with gcd 1 and positive leading coefficient.
  Poly primitive() const {
    if (is_zero()) return *this;
    BigInt g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
      g = gcd(g, BigInt(boost::multiprecision::numerator(c)));
      l = lcm(l, BigInt(boost::multiprecision::denominator(c)));
    }
    Rational s = Rational(l) / Rational(g);
    if (grlex_leading_coeff() < 0) s = -s;
    return *this * s;
  }
  Poly monic_like() const { return primitive(); }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : grlex_terms()) {
      bool mono_const = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
      Rational a = c;
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      if (a < 0) a = -a;
      bool need_star = false;
      if (mono_const || a != 1) {
        os << a;
        need_star = true;
      }
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) {
          if (need_star) os << "*";
          os << vars_[i];
          if (m[i] > 1) os << "^" << m[i];
          need_star = true;
        }
      first = false;
    }
    return os.str();
  }

  static Poly parse(const std::string& text, std::vector<std::string> vars = {});

 private:
  std::vector<std::string> vars_;
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& s, std::vector<std::string> vars) : s_(s), vars_(std::move(vars)) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    std::vector<std::string> v = vars_;
    for (const auto& x : p.vars())
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    return p.over(v);
  }

 private:
  const std::string& s_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& m) {
    throw DomainError("poly.parse", "polynomial parse error at offset " + std::to_string(pos_) + ": " + m);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly expr() {
    skip();
    Poly acc;
    bool neg = eat('-');
    if (!neg) eat('+');
    acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }
  Poly term() {
    Poly acc = factor();
    while (true) {
      skip();
      if (eat('*')) {
        acc *= factor();
        continue;
      }
      // implicit product: "3a" or "a b"
      if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
        acc *= factor();
        continue;
      }
      break;
    }
    return acc;
  }
  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("expected exponent");
      base = base.pow(std::stoi(s_.substr(st, pos_ - st)));
    }
    return base;
  }
  Poly atom() {
    skip();
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (eat('-')) return -atom();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      BigInt num(s_.substr(st, pos_ - st));
      Rational v(num);
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t sd = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (sd == pos_) fail("expected denominator");
        BigInt den(s_.substr(sd, pos_ - sd));
        if (den == 0) fail("zero denominator");
        v = Rational(num, den);
      }
      return Poly::constant(v);
    }
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Poly::variable(s_.substr(st, pos_ - st));
    }
    fail("expected number, variable or '('");
  }
};

}  // namespace detail

inline Poly Poly::parse(const std::string& text, std::vector<std::string> vars) {
  return detail::PolyParser(text, std::move(vars)).run();
}

// Exact quotient f / g; throws if g does not divide f.
inline Poly divide_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw DomainError("poly.division_by_zero", "division by zero polynomial");
  auto v = Poly::merged_vars(f, g);
  Poly r = f.over(v), d = g.over(v), q(v);
  auto [lm, lc] = d.lex_leading();
  while (!r.is_zero()) {
    auto [m, c] = r.lex_leading();
    Poly::Mono qm(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      qm[i] = m[i] - lm[i];
      if (qm[i] < 0) throw DomainError("poly.inexact", "polynomial division is not exact");
    }
    Poly t(v);
    t.add_term(qm, c / lc);
    q += t;
    r -= t * d;
  }
  return q;
}

inline bool divides(const Poly& g, const Poly& f) {
  try {
    divide_exact(f, g);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

// Determinant by fraction-free Bareiss elimination.
inline Poly determinant(std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(1);
  Poly prev = Poly::constant(1);
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return Poly::constant(0);
      std::swap(m[k], m[piv]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  return neg ? -d : d;
}

inline Poly resultant(const Poly& f, const Poly& g, const std::string& var) {
  int m = f.degree(var), n = g.degree(var);
  if (m < 1 || n < 1)
    throw DomainError("poly.resultant_degree", "resultant needs positive degree in " + var);
  auto fc = f.coefficients(var), gc = g.coefficients(var);
  std::vector<std::string> rest;
  for (const auto& x : Poly::merged_vars(f, g))
    if (x != var) rest.push_back(x);
  std::vector<std::vector<Poly>> s(m + n, std::vector<Poly>(m + n, Poly(rest)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = fc[m - k].over(rest);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = gc[n - k].over(rest);
  Poly d = determinant(std::move(s));
  std::vector<std::string> keep;
  for (const auto& x : d.vars())
    if (x != var) keep.push_back(x);
  return d.over(keep);
}

// Res(f, f') / lc(f) with sign (-1)^{n(n-1)/2}.
inline Poly discriminant_univariate(const Poly& f, const std::string& var) {
  int n = f.degree(var);
  if (n < 2) throw DomainError("poly.discriminant_degree", "discriminant needs degree >= 2 in " + var);
  Poly r = resultant(f, f.derivative(var), var);
  Poly q = divide_exact(r, f.leading_coeff(var));
  if ((n * (n - 1) / 2) % 2) q = -q;
  std::vector<std::string> keep;
  for (const auto& x : q.vars())
    if (x != var) keep.push_back(x);
  return q.over(keep);
}

namespace detail {

inline std::string main_var(const Poly& a, const Poly& b) {
  for (const auto& v : Poly::merged_vars(a, b))
    if (a.degree(v) > 0 || b.degree(v) > 0) return v;
  return {};
}

Poly poly_gcd(const Poly& a, const Poly& b);

// gcd of the coefficients of f viewed as a polynomial in v.
inline Poly content_in(const Poly& f, const std::string& v) {
  Poly g;
  bool first = true;
  for (const auto& c : f.coefficients(v)) {
    if (c.is_zero()) continue;
    g = first ? c.primitive() : poly_gcd(g, c);
    first = false;
    if (g.is_constant()) break;
  }
  return first ? Poly::constant(0) : g;
}

inline Poly pseudo_rem(Poly a, const Poly& b, const std::string& v) {
  int db = b.degree(v);
  Poly lb = b.leading_coeff(v);
  while (!a.is_zero() && a.degree(v) >= db) {
    int da = a.degree(v);
    Poly la = a.leading_coeff(v);
    a = lb * a - la * Poly::variable(v, da - db) * b;
  }
  return a;
}

inline Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  std::string v = main_var(a, b);
  if (v.empty()) return Poly::constant(1);
  if (a.degree(v) == 0 || b.degree(v) == 0) {
    // one side is free of v: the gcd divides every v-coefficient of the other
    const Poly& free = a.degree(v) == 0 ? a : b;
    const Poly& other = a.degree(v) == 0 ? b : a;
    Poly g = free.primitive();
    for (const auto& c : other.coefficients(v)) {
      if (c.is_zero()) continue;
      g = poly_gcd(g, c);
      if (g.is_constant()) break;
    }
    return g.primitive();
  }
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly cg = poly_gcd(ca, cb);
  Poly x = divide_exact(a, ca).primitive(), y = divide_exact(b, cb).primitive();
  if (x.degree(v) < y.degree(v)) std::swap(x, y);
  while (!y.is_zero() && y.degree(v) > 0) {
    Poly r = pseudo_rem(x, y, v);
    x = y;
    if (r.is_zero()) {
      y = r;
      break;
    }
    Poly cr = content_in(r, v);
    y = divide_exact(r, cr).primitive();
  }
  Poly g = (!y.is_zero() && y.degree(v) == 0) ? Poly::constant(1) : x;
  return (cg * g).primitive();
}

}  // namespace detail

inline Poly gcd(const Poly& a, const Poly& b) { return detail::poly_gcd(a, b); }

struct Factor {
  Poly factor;
  int multiplicity = 1;
};

// Squarefree decomposition (Yun), content-free factors with positive leading coefficient.
inline std::vector<Factor> squarefree_factors(const Poly& f) {
  if (f.is_zero()) throw DomainError("poly.zero", "squarefree decomposition of zero");
  std::vector<Factor> out;
  auto used = f.used_vars();
  if (used.empty()) return out;
  const std::string& v = used.front();
  Poly cont = detail::content_in(f, v);
  if (!cont.is_constant())
    for (auto& fa : squarefree_factors(cont)) out.push_back(fa);
  Poly pp = divide_exact(f, cont).primitive();
  Poly dp = pp.derivative(v);
  Poly a = gcd(pp, dp);
  Poly b = divide_exact(pp, a);
  Poly c = divide_exact(dp, a);
  Poly d = c - b.derivative(v);
  for (int i = 1; !b.is_constant(); ++i) {
    Poly ai = gcd(b, d);
    if (!ai.is_constant()) out.push_back({ai.primitive(), i});
    b = divide_exact(b, ai);
    c = divide_exact(d, ai);
    d = c - b.derivative(v);
  }
  std::stable_sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) {
    if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity;
    return x.factor.str() < y.factor.str();
  });
  return out;
}

inline Poly squarefree_part(const Poly& f) {
  Poly r = Poly::constant(1);
  for (const auto& fa : squarefree_factors(f)) r *= fa.factor;
  return r.primitive();
}

namespace detail {

inline std::vector<std::pair<BigInt, int>> factor_integer(BigInt n) {
  std::vector<std::pair<BigInt, int>> out;
  if (n < 0) n = -n;
  for (BigInt f = 2; f <= 1000000 && f * f <= n; ++f) {
    int e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e) out.push_back({f, e});
  }
  if (n > 1) {
    if (n > BigInt(1000000) * 1000000 && !boost::multiprecision::miller_rabin_test(n, 25))
      throw DomainError("poly.factor", "cannot factor integer constant for rational root search");
    out.push_back({n, 1});
  }
  return out;
}

inline std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> ds{1};
  for (const auto& [p, e] : factor_integer(n)) {
    std::size_t sz = ds.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace detail

// Distinct rational roots of a univariate polynomial, ascending.
inline std::vector<Rational> rational_roots(const Poly& f) {
  auto used = f.used_vars();
  if (used.size() > 1) throw DomainError("poly.not_univariate", "rational_roots needs a univariate polynomial");
  std::vector<Rational> out;
  if (used.empty()) return out;
  const std::string v = used.front();
  Poly g = squarefree_part(f);
  auto cs = g.coefficients(v);
  std::size_t low = 0;
  while (cs[low].is_zero()) ++low;
  if (low > 0) out.push_back(0);
  BigInt c0 = boost::multiprecision::numerator(cs[low].constant_value());
  BigInt cn = boost::multiprecision::numerator(cs.back().constant_value());
  if (cs.size() - low > 1) {
    auto nums = detail::divisors(c0), dens = detail::divisors(cn);
    std::vector<Rational> cand;
    for (const auto& u : nums)
      for (const auto& w : dens) {
        cand.push_back(Rational(u, w));
        cand.push_back(-Rational(u, w));
      }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const auto& r : cand)
      if (g.evaluate({{v, r}}) == 0) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct LinearSplit {
  std::vector<Rational> roots;  // each root r contributes the factor (v - r)
  Poly cofactor;                // remaining squarefree part without rational roots
};

inline LinearSplit split_rational_roots(const Poly& f) {
  LinearSplit s;
  s.roots = rational_roots(f);
  Poly g = squarefree_part(f);
  auto used = g.used_vars();
  for (const auto& r : s.roots) {
    Poly lin = Poly::variable(used.front()) - Poly::constant(r);
    g = divide_exact(g, lin);
  }
  s.cofactor = g.is_zero() ? g : g.primitive();
  return s;
}

inline Poly linear_factor(const std::string& v, const Rational& r) {
  return (Poly::variable(v) - Poly::constant(r)).primitive();
}

// Multiplicity of r as a root of the univariate polynomial f.
inline int root_multiplicity(Poly f, const std::string& v, const Rational& r) {
  if (f.is_zero()) throw DomainError("poly.zero", "multiplicity in the zero polynomial");
  Poly lin = Poly::variable(v) - Poly::constant(r);
  int m = 0;
  while (f.degree(v) > 0 && f.substitute({{v, r}}).is_zero()) {
    f = divide_exact(f, lin);
    ++m;
  }
  return m;
}

}  // namespace cyzeta
