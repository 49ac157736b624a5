#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyzeta/family.hpp"
#include "cyzeta/ffield.hpp"
#include "cyzeta/poly.hpp"
#include "cyzeta/weights.hpp"

namespace cyzeta {

struct LocalType {
  std::string label;
  std::int64_t milnor = 0;
  bool classified = true;
};

// Normal form: quadratic part of the given rank plus sum x_i^{a_i}; with
// cross_term the product of the exponent variables is added as well.
inline LocalType classify_local_form(int quadratic_rank, std::vector<int> exps, bool cross_term = false) {
  for (int e : exps)
    if (e < 2) throw DomainError("sing.exponent", "local form exponents must be >= 2");
  std::sort(exps.begin(), exps.end());
  auto bp_label = [](const std::vector<int>& xs) { return "BP(" + join_ints(xs) + ")"; };
  if (cross_term) {
    if (exps.size() == 1) return {"smooth", 0, true};
    if (exps.size() == 2) return {"A_1", 1, true};
    if (exps.size() == 3) {
      int p = exps[0], q = exps[1], r = exps[2];
      std::int64_t mu = p + q + r - 1;
      // 1/p + 1/q + 1/r compared with 1
      std::int64_t lhs = std::int64_t(q) * r + std::int64_t(p) * r + std::int64_t(p) * q, rhs = std::int64_t(p) * q * r;
      if (lhs > rhs) return {"T(" + join_ints(exps) + ")", 0, false};
      if (lhs == rhs) {
        if (exps == std::vector<int>{3, 3, 3}) return {"P_8", mu, true};
        if (exps == std::vector<int>{2, 4, 4}) return {"X_9", mu, true};
        return {"J_10", mu, true};
      }
      return {"T_{" + join_ints(exps) + "}", mu, true};
    }
    return {"unclassified", 0, false};
  }
  std::vector<int> big;
  int rank = quadratic_rank;
  for (int e : exps) {
    if (e == 2)
      ++rank;
    else
      big.push_back(e);
  }
  std::int64_t mu = 1;
  for (int e : big) mu *= e - 1;
  if (big.empty()) return rank > 0 ? LocalType{"A_1", 1, true} : LocalType{"smooth", 0, true};
  if (big.size() == 1) return {"A_" + std::to_string(big[0] - 1), mu, true};
  if (big.size() == 2) {
    if (big == std::vector<int>{3, 3}) return {"D_4", mu, true};
    if (big == std::vector<int>{3, 4}) return {"E_6", mu, true};
    if (big == std::vector<int>{3, 5}) return {"E_8", mu, true};
    if (big == std::vector<int>{4, 4}) return {"X_9", mu, true};
    if (big == std::vector<int>{3, 6}) return {"J_10", mu, true};
  }
  if (big == std::vector<int>{3, 3, 3}) return {"P_8", mu, true};
  return {bp_label(big), mu, false};
}

struct SingularFibreReport {
  std::string parameter;           // name of the deformation parameter
  Poly component;                  // discriminant component in the parameter
  std::int64_t count = 0;          // singular points per fibre
  int quadratic_rank = 0;
  std::vector<int> local_exponents;
  std::int64_t milnor_each = 0;
  std::int64_t milnor_total = 0;
  std::string type_label;
  std::int64_t gamma = 0;
  std::vector<int> variable_order;  // original indices, nonzero beta entries first
};

inline SingularFibreReport one_param_report(const WeightSystem& ws, const ExponentVector& beta,
                                            const std::string& param = "a") {
  require_degree_one(beta, ws);
  SingularFibreReport r;
  r.parameter = param;
  r.variable_order.resize(ws.n());
  std::iota(r.variable_order.begin(), r.variable_order.end(), 0);
  std::stable_partition(r.variable_order.begin(), r.variable_order.end(), [&](int i) { return beta[i] != 0; });
  int k = 0;
  for (int i = 0; i < ws.n(); ++i) k += beta[i] != 0;
  if (k < 2) throw DomainError("sing.support", "deformation monomial " + beta.str() + " needs at least 2 variables");
  std::int64_t gamma = beta_gcd(ws, beta);
  r.gamma = gamma;
  int N = static_cast<int>(ws.d / gamma);
  BigInt den = 1, gw = 0, prod_w = 1;
  for (int j = 0; j < k; ++j) {
    int i = r.variable_order[j];
    std::int64_t bw = std::int64_t(beta[i]) * ws.w[i];
    BigInt t = 1;
    for (std::int64_t e = 0; e < bw / gamma; ++e) t *= bw;
    den *= t;
    gw = gcd(gw, BigInt(ws.w[i]));
    prod_w *= ws.w[i];
  }
  BigInt dn = 1;
  for (int e = 0; e < N; ++e) dn *= ws.d;
  Poly disc = Poly::constant(Rational(den)) * Poly::variable(param, N) +
              Poly::constant(Rational((N - 1) % 2 ? -dn : dn));
  r.component = disc.primitive();
  BigInt num = gw * gamma;
  for (int e = 0; e < k - 2; ++e) num *= ws.d;
  if (num % prod_w != 0)
    throw DomainError("sing.count", "singular point count is not integral for " + beta.str());
  r.count = static_cast<std::int64_t>(num / prod_w);
  r.quadratic_rank = k - 1;
  r.milnor_each = 1;
  for (int j = k; j < ws.n(); ++j) {
    int i = r.variable_order[j];
    r.local_exponents.push_back(ws.alpha(i));
    r.milnor_each *= ws.alpha(i) - 1;
  }
  auto lt = classify_local_form(r.quadratic_rank, r.local_exponents);
  r.type_label = lt.label;
  r.milnor_total = r.count * r.milnor_each;
  return r;
}

inline std::int64_t total_milnor(const SingularFibreReport& rep, const Rational& value) {
  if (rep.component.evaluate({{rep.parameter, value}}) != 0) return 0;
  return rep.milnor_total;
}

// Same, with the discriminant read modulo p: value is singular over F_p.
inline std::int64_t total_milnor_mod_p(const SingularFibreReport& rep, const Rational& value, std::int64_t p) {
  Rational v = rep.component.evaluate({{rep.parameter, value}});
  BigInt num = boost::multiprecision::numerator(v), den = boost::multiprecision::denominator(v);
  if (den % p == 0) throw DomainError("ffield.bad_reduction", "parameter does not reduce modulo " + std::to_string(p));
  return num % p == 0 ? rep.milnor_total : 0;
}

struct Component {
  Poly poly;
  std::string kind;  // "line" or "curve"
};

namespace detail {

inline void add_components(std::vector<Poly>& out, const Poly& f) {
  if (f.is_zero() || f.is_constant()) return;
  for (const auto& fa : squarefree_factors(f)) {
    Poly g = fa.factor.primitive();
    if (g.is_constant()) continue;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
}

// Replaces v^k by v^(k/g) where g is the gcd of all exponents of v in f and h.
inline int exponent_gcd(const std::vector<Poly>& fs, const std::string& v) {
  int g = 0;
  for (const auto& f : fs) {
    int i = f.var_index(v);
    if (i < 0) continue;
    for (const auto& [m, c] : f.terms()) g = std::gcd(g, m[i]);
  }
  return g == 0 ? 1 : g;
}

inline Poly deflate(const Poly& f, const std::string& v, int g) {
  int i = f.var_index(v);
  if (i < 0 || g == 1) return f;
  Poly r(f.vars());
  for (const auto& [m, c] : f.terms()) {
    auto nm = m;
    nm[i] /= g;
    r.add_term(nm, c);
  }
  return r;
}

}  // namespace detail

struct TwoParamShape {
  int i1 = 0, i2 = 1;  // positions of the b-monomial support
  int beta1 = 0, beta2 = 0;
};

inline TwoParamShape two_param_shape(const WeightSystem& ws, const ExponentVector& eb) {
  require_degree_one(eb, ws);
  TwoParamShape s;
  std::vector<int> sup;
  for (int i = 0; i < ws.n(); ++i)
    if (eb[i] != 0) sup.push_back(i);
  if (sup.size() != 2)
    throw DomainError("sing.two_param_shape", "b-monomial " + eb.str() + " must involve exactly two variables");
  s.i1 = sup[0];
  s.i2 = sup[1];
  s.beta1 = eb[s.i1];
  s.beta2 = eb[s.i2];
  return s;
}

// Line components: discriminant in x of x^{d/w2} + b x^{beta2} + 1.
inline std::vector<Poly> two_param_lines(const WeightSystem& ws, const TwoParamShape& s, const std::string& b = "b") {
  Poly x = Poly::variable("x");
  Poly f = Poly::variable("x", ws.alpha(s.i2)) + Poly::variable(b) * Poly::variable("x", s.beta2) + Poly::constant(1);
  Poly disc = discriminant_univariate(f, "x");
  auto split = split_rational_roots(disc);
  std::vector<Poly> out;
  for (const auto& r : split.roots) out.push_back(linear_factor(b, r));
  if (!split.cofactor.is_constant()) out.push_back(split.cofactor);
  return out;
}

// The two eliminants in the chart x_{i1} = 1: g (from the a-monomial, raised to
// the lcm power) and h (from the x_{i2} partial), both in x = x_{i2}, a, b.
inline std::pair<Poly, Poly> two_param_eliminants(const WeightSystem& ws, const TwoParamShape& s,
                                                  const std::string& a = "a", const std::string& b = "b") {
  const int d = ws.d;
  const int w1 = ws.w[s.i1], w2 = ws.w[s.i2];
  std::int64_t L = 1;
  for (int i = 0; i < ws.n(); ++i)
    if (i != s.i1 && i != s.i2) L = std::lcm(L, std::int64_t(ws.alpha(i)));
  Poly x = Poly::variable("x");
  Poly P = Poly::constant(s.beta1) * Poly::variable(b) * Poly::variable("x", s.beta2) + Poly::constant(d / w1);
  BigInt wprod = 1, dpow = 1;
  std::int64_t dexp = 0;
  for (int i = 0; i < ws.n(); ++i) {
    if (i == s.i1 || i == s.i2) continue;
    std::int64_t e = L * ws.w[i] / d;
    for (std::int64_t t = 0; t < e; ++t) wprod *= ws.w[i];
    dexp += e;
  }
  for (std::int64_t t = 0; t < dexp; ++t) dpow *= d;
  int Lint = static_cast<int>(L);
  int pexp = static_cast<int>(L * (w1 + w2) / d);
  Poly g = Poly::constant(Rational(wprod)) * Poly::variable(a, Lint) * Poly::variable("x", Lint) -
           Poly::constant(Rational(Lint % 2 ? -dpow : dpow)) * P.pow(pexp);
  Poly h = Poly::constant(ws.alpha(s.i2)) * Poly::variable("x", ws.alpha(s.i2)) +
           Poly::constant(s.beta2 - s.beta1) * Poly::variable(b) * Poly::variable("x", s.beta2) -
           Poly::constant(d / w1);
  return {g, h};
}

inline std::vector<Poly> two_param_curves(const WeightSystem& ws, const TwoParamShape& s, const std::string& a = "a",
                                          const std::string& b = "b") {
  auto [g, h] = two_param_eliminants(ws, s, a, b);
  int e = detail::exponent_gcd({g, h}, "x");
  g = detail::deflate(g, "x", e);
  h = detail::deflate(h, "x", e);
  std::vector<Poly> out;
  std::vector<std::string> hv = h.used_vars();
  if (hv.size() == 1 && hv[0] == "x") {
    auto split = split_rational_roots(h);
    for (const auto& y0 : split.roots) detail::add_components(out, g.substitute({{"x", y0}}));
    if (!split.cofactor.is_constant()) detail::add_components(out, resultant(g, split.cofactor, "x"));
  } else {
    detail::add_components(out, resultant(g, h, "x"));
  }
  for (auto& c : out) c = c.over({a, b}).primitive();
  std::sort(out.begin(), out.end(), [](const Poly& x, const Poly& y) { return x.str() < y.str(); });
  return out;
}

inline std::vector<Component> two_param_components(const WeightSystem& ws, const ExponentVector& eb) {
  auto s = two_param_shape(ws, eb);
  std::vector<Component> out;
  for (auto& l : two_param_lines(ws, s)) out.push_back({l, "line"});
  for (auto& c : two_param_curves(ws, s)) out.push_back({c, "curve"});
  return out;
}

// Singular locus of the curve, given by its equations.
struct CurveSingularStratum {
  std::string locus;  // equations, comma separated
  std::int64_t count = 0;
  std::string type_label;
  std::int64_t milnor_each = 0;
};

struct TwoParamAnalysis {
  FamilySpec family;
  std::string a, b;
  SingularFibreReport conifold;  // a-direction at b = 0
  SingularFibreReport merged;    // b-direction at a = 0
  LocalType line_type;           // generic point of a line
  Poly lines;                    // squarefree, in b
  std::vector<Rational> line_roots;
  std::vector<Poly> curves;
  Poly curve;
  bool curve_given = false;
  int contact = 0;  // order of contact of curve and lines at a = 0
  std::vector<CurveSingularStratum> curve_singular;

  std::int64_t line_milnor() const { return merged.count * line_type.milnor; }
  std::int64_t curve_milnor() const { return conifold.milnor_total; }
};

inline bool is_all_ones(const ExponentVector& e) {
  return std::all_of(e.e.begin(), e.e.end(), [](int x) { return x == 1; });
}

// Fermat + a * prod x_i + b * x^{e_b}: discriminant components and singular strata.
inline TwoParamAnalysis analyze_two_param(const FamilySpec& fam, const std::optional<Poly>& given_curve = {},
                                          std::vector<CurveSingularStratum> given_strata = {}) {
  if (fam.deformations.size() != 2)
    throw DomainError("sing.two_param", "two-parameter analysis needs exactly two deformations");
  int ia = is_all_ones(fam.deformations[0].e) ? 0 : 1;
  if (!is_all_ones(fam.deformations[ia].e))
    throw DomainError("sing.two_param", "one deformation must be the product of all variables");
  TwoParamAnalysis an;
  an.family = fam;
  an.a = fam.deformations[ia].name;
  an.b = fam.deformations[1 - ia].name;
  const auto& ws = fam.ws;
  const auto& eb = fam.deformations[1 - ia].e;
  an.conifold = one_param_report(ws, fam.deformations[ia].e, an.a);
  an.merged = one_param_report(ws, eb, an.b);
  std::vector<int> tail;
  for (int i = 0; i < ws.n(); ++i)
    if (eb[i] == 0) tail.push_back(ws.alpha(i));
  an.line_type = classify_local_form(0, tail, true);
  an.lines = squarefree_part(an.merged.component).over({an.b});
  an.line_roots = rational_roots(an.lines);
  if (given_curve) {
    an.curve_given = true;
    an.curve = given_curve->over({an.a, an.b}).primitive();
    an.curves = {an.curve};
  } else {
    auto s = two_param_shape(ws, eb);
    an.curves = two_param_curves(ws, s, an.a, an.b);
    an.curve = Poly::constant(1);
    for (const auto& c : an.curves) an.curve *= c;
    an.curve = an.curve.over({an.a, an.b}).primitive();
  }
  Poly c0 = an.curve.substitute({{an.a, 0}}).over({an.b});
  if (c0.is_zero()) throw DomainError("sing.contact", "curve contains the line a = 0");
  Poly q = c0;
  Poly lb = an.lines;
  an.contact = 0;
  while (q.degree(an.b) >= lb.degree(an.b) && divides(lb, q)) {
    q = divide_exact(q, lb);
    ++an.contact;
  }
  an.curve_singular = std::move(given_strata);
  return an;
}

struct Locus {
  bool on_line = false;
  bool on_curve = false;
  bool a_zero = false;
  int curve_singular = -1;  // index into TwoParamAnalysis::curve_singular
};

inline Locus locate(const TwoParamAnalysis& an, const ParamPoint& at) {
  Locus l;
  Rational av = at.at(an.a), bv = at.at(an.b);
  l.a_zero = av == 0;
  l.on_line = an.lines.evaluate({{an.b, bv}}) == 0;
  l.on_curve = an.curve.evaluate({{an.a, av}, {an.b, bv}}) == 0;
  for (std::size_t k = 0; k < an.curve_singular.size(); ++k) {
    bool all = true;
    std::stringstream ss(an.curve_singular[k].locus);
    std::string eq;
    while (std::getline(ss, eq, ','))
      all = all && Poly::parse(eq, {an.a, an.b}).evaluate({{an.a, av}, {an.b, bv}}) == 0;
    if (all) l.curve_singular = static_cast<int>(k);
  }
  return l;
}

inline std::int64_t total_milnor(const TwoParamAnalysis& an, const Locus& l) {
  if (l.curve_singular >= 0) {
    const auto& s = an.curve_singular.at(l.curve_singular);
    return s.count * s.milnor_each;
  }
  if (l.on_line && l.a_zero) return an.merged.milnor_total;
  if (l.on_line && l.on_curve) return an.line_milnor() + an.curve_milnor();
  if (l.on_line) return an.line_milnor();
  if (l.on_curve) return an.curve_milnor();
  return 0;
}

// Points of a given singular stratum of the curve over F_p, with the
// multiplicity of the curve at each (order of the first nonvanishing derivative).
inline std::vector<int> curve_multiplicities_mod_p(const TwoParamAnalysis& an, const CurveSingularStratum& st,
                                                   const FqContext& fq, int max_order = 4) {
  std::vector<Poly> eqs;
  std::stringstream ss(st.locus);
  std::string eq;
  while (std::getline(ss, eq, ',')) eqs.push_back(Poly::parse(eq, {an.a, an.b}));
  auto red = [&](const Poly& f, std::int64_t av, std::int64_t bv) {
    FqContext::Elt acc = 0;
    Poly g = f.over({an.a, an.b});
    for (const auto& [m, c] : g.terms()) {
      auto t = fq.mul(reduce_rational(fq, c), fq.mul(fq.pow(fq.from_int(av), m[0]), fq.pow(fq.from_int(bv), m[1])));
      acc = fq.add(acc, t);
    }
    return acc;
  };
  // derivatives of the curve up to max_order
  std::vector<std::vector<Poly>> ders(max_order + 1);
  ders[0] = {an.curve};
  for (int o = 1; o <= max_order; ++o)
    for (const auto& f : ders[o - 1]) {
      ders[o].push_back(f.derivative(an.a));
      ders[o].push_back(f.derivative(an.b));
    }
  std::vector<int> out;
  for (std::int64_t av = 0; av < fq.p(); ++av)
    for (std::int64_t bv = 0; bv < fq.p(); ++bv) {
      bool on = true;
      for (const auto& e : eqs) on = on && red(e, av, bv) == 0;
      if (!on) continue;
      int mult = -1;
      for (int o = 0; o <= max_order && mult < 0; ++o)
        for (const auto& f : ders[o])
          if (red(f, av, bv) != 0) {
            mult = o;
            break;
          }
      out.push_back(mult);
    }
  return out;
}

struct SingularCount {
  std::int64_t cone = 0;        // affine solutions x != 0
  std::int64_t projective = 0;  // weighted projective points (orbits)
};

// Counts points of the fibre where all partial derivatives vanish, over F_q.
inline SingularCount singular_points_count_Fq(const FamilySpec& fam, const ParamPoint& at, const FqContext& fq,
                                              unsigned threads = 1) {
  const auto& ws = fam.ws;
  if ((fq.q() - 1) % ws.d != 0)
    throw DomainError("sing.field", "need q = 1 mod d for the singular point oracle (q=" + std::to_string(fq.q()) +
                                        ", d=" + std::to_string(ws.d) + ")");
  auto params = reduce_params(fam, fq, at);
  FqPoly f = family_fq(fam, fq, params);
  const int n = fam.n();
  std::vector<FqPoly> parts;
  for (int i = n - 1; i >= 0; --i) parts.push_back(partial_fq(f, fq, i));
  const std::int64_t q = fq.q(), Q = q - 1;
  std::int64_t outer = 1;
  for (int i = 0; i < n - 1; ++i) outer *= q;
  auto res = parallel_chunks<std::pair<std::int64_t, std::int64_t>>(
      outer, threads, [&](std::int64_t lo, std::int64_t hi, unsigned) {
        std::vector<FqContext::Elt> x(n);
        std::int64_t cone = 0, stab = 0;
        for (std::int64_t k = lo; k < hi; ++k) {
          std::int64_t t = k;
          for (int i = n - 2; i >= 0; --i) {
            x[i] = static_cast<FqContext::Elt>(t % q);
            t /= q;
          }
          for (std::int64_t last = 0; last < q; ++last) {
            x[n - 1] = static_cast<FqContext::Elt>(last);
            bool sing = true;
            for (const auto& g : parts)
              if (g.eval(fq, x.data()) != 0) {
                sing = false;
                break;
              }
            if (!sing) continue;
            if (f.eval(fq, x.data()) != 0) continue;
            std::int64_t gw = 0;
            for (int i = 0; i < n; ++i)
              if (x[i]) gw = std::gcd(gw, std::int64_t(ws.w[i]));
            if (gw == 0) continue;  // origin
            ++cone;
            stab += std::gcd(Q, gw);
          }
        }
        return std::make_pair(cone, stab);
      });
  SingularCount out;
  std::int64_t stab = 0;
  for (auto [c, s] : res) {
    out.cone += c;
    stab += s;
  }
  if (stab % Q != 0) throw std::logic_error("orbit sum not divisible by q-1");
  out.projective = stab / Q;
  return out;
}

}  // namespace cyzeta
