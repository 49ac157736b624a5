#pragma once

#include <algorithm>
#include <bit>
#include <tuple>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cyzeta/family.hpp"
#include "cyzeta/ffield.hpp"
#include "cyzeta/poly.hpp"
#include "cyzeta/weights.hpp"

namespace cyzeta {

inline constexpr double kRoundTol = 1e-6;
inline constexpr std::int64_t kDefaultBudget = 10'000'000'000;

struct PointCount {
  std::int64_t q = 0;
  std::int64_t cone = 0;        // affine solutions, origin included
  std::int64_t projective = 0;  // points of the weighted projective variety
  std::string method;
  double residual = 0;
};

namespace detail {

inline std::int64_t stabilizer(const WeightSystem& ws, unsigned mask, std::int64_t Q) {
  std::int64_t g = 0;
  for (int i = 0; i < ws.n(); ++i)
    if (mask >> i & 1u) g = std::gcd(g, std::int64_t(ws.w[i]));
  return std::gcd(Q, g);
}

inline unsigned support_mask(const std::vector<int>& e) {
  unsigned m = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) m |= 1u << i;
  return m;
}

// Nonzero monomial terms of F over F_q, coefficient stored as a discrete log.
struct LogTerm {
  std::int64_t logc;
  std::vector<int> e;
  unsigned mask;
};

inline std::vector<LogTerm> log_terms(const FamilySpec& fam, const FqContext& fq, const FqParams& at) {
  std::vector<LogTerm> out;
  for (const auto& t : family_fq(fam, fq, at).terms)
    if (t.c) out.push_back({fq.log(t.c), t.e, support_mask(t.e)});
  return out;
}

// Number of distinct roots in F_q of the monic polynomial sum c[k] y^k,
// as the degree of gcd(g, y^q - y).
inline int distinct_roots(const FqContext& fq, std::vector<FqContext::Elt> g) {
  while (!g.empty() && g.back() == 0) g.pop_back();
  const int D = static_cast<int>(g.size()) - 1;
  if (D <= 0) return 0;
  if (D == 1) return 1;
  using V = std::vector<FqContext::Elt>;
  auto reduce = [&](V a, const V& m) {  // a mod m, m monic
    const int dm = static_cast<int>(m.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= dm; --k) {
      auto c = a[k];
      if (!c) continue;
      for (int t = 0; t <= dm; ++t) a[k - dm + t] = fq.sub(a[k - dm + t], fq.mul(c, m[t]));
    }
    a.resize(std::min<std::size_t>(a.size(), dm));
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  };
  auto mulmod = [&](const V& a, const V& b) {
    if (a.empty() || b.empty()) return V{};
    V r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i])
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = fq.add(r[i + j], fq.mul(a[i], b[j]));
    return reduce(std::move(r), g);
  };
  V h{1}, base = reduce(V{0, 1}, g);
  for (std::int64_t e = fq.q(); e; e >>= 1) {
    if (e & 1) h = mulmod(h, base);
    if (e > 1) base = mulmod(base, base);
  }
  h.resize(std::max<std::size_t>(h.size(), 2), 0);
  h[1] = fq.sub(h[1], 1);
  while (!h.empty() && h.back() == 0) h.pop_back();
  // gcd(g, h)
  V a = g, b = h;
  while (!b.empty()) {
    auto inv = fq.inv(b.back());
    for (auto& x : b) x = fq.mul(x, inv);
    a = reduce(std::move(a), b);
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace detail

// Exact count by enumeration. Orbits with first nonzero coordinate j are met by
// the slices x_j = c for c in a set of coset representatives of the w_j-th powers.
inline PointCount count_bruteforce(const FamilySpec& fam, const ParamPoint& at, const FqContext& fq,
                                   std::int64_t budget = kDefaultBudget, unsigned threads = 1) {
  const auto& ws = fam.ws;
  const int n = fam.n();
  const std::int64_t q = fq.q(), Q = q - 1;
  auto terms = detail::log_terms(fam, fq, reduce_params(fam, fq, at));
  struct Plan {
    int j;
    std::int64_t g;
    int solve;  // variable solved through a power table, or -1
    bool roots;  // innermost free variable solved by root counting
    std::vector<int> free;
    std::vector<detail::LogTerm> inner, outer;  // terms with / without the innermost free variable
  };
  std::vector<Plan> plans;
  long double work = 0;
  for (int j = 0; j < n; ++j) {
    Plan pl;
    pl.j = j;
    pl.g = std::gcd(std::int64_t(ws.w[j]), Q);
    unsigned active = 0;
    for (int i = j; i < n; ++i) active |= 1u << i;
    std::vector<detail::LogTerm> ts;
    for (const auto& t : terms)
      if ((t.mask & ~active) == 0) ts.push_back(t);
    pl.solve = -1;
    for (int k = n - 1; k > j; --k) {
      bool only_fermat = true;
      for (const auto& t : ts)
        if ((t.mask >> k & 1u) && t.mask != (1u << k)) only_fermat = false;
      if (only_fermat) {
        pl.solve = k;
        break;
      }
    }
    for (int i = j + 1; i < n; ++i)
      if (i != pl.solve) pl.free.push_back(i);
    int inner_var = pl.free.empty() ? -1 : pl.free.back();
    for (const auto& t : ts) {
      if (pl.solve >= 0 && t.mask == (1u << pl.solve)) continue;
      (inner_var >= 0 && (t.mask >> inner_var & 1u) ? pl.inner : pl.outer).push_back(t);
    }
    long double root_cost = 0;
    if (inner_var >= 0) {
      long double a = ws.alpha(inner_var);
      root_cost = 2 * a * a * std::log2((long double)q) + pl.inner.size();
    }
    pl.roots = pl.solve < 0 && inner_var >= 0 && root_cost < q;
    long double per_outer = pl.roots ? root_cost : (inner_var >= 0 ? (long double)q : 1.0L);
    work += (long double)pl.g * std::pow((long double)q, (long double)pl.free.size() - (inner_var >= 0)) * per_outer;
    plans.push_back(std::move(pl));
  }
  if (work > (long double)budget)
    throw BudgetExceeded("brute-force count over F_" + std::to_string(q) + " needs about " +
                         std::to_string((long long)work) + " evaluations, over the budget of " +
                         std::to_string(budget) + "; use the character-sum method");

  PointCount pc;
  pc.q = q;
  pc.method = "bruteforce";
  std::int64_t cone = 1;
  std::int64_t proj_total = 0;
  for (const auto& pl : plans) {
    const int nf = static_cast<int>(pl.free.size());
    const std::int64_t gs = pl.solve >= 0 ? std::gcd(std::int64_t(ws.alpha(pl.solve)), Q) : 0;
    std::int64_t plan_stab = 0;
    std::int64_t outer_size = 1;
    for (int t = 0; t + 1 < nf; ++t) outer_size *= q;
    const std::int64_t inner_size = nf > 0 ? q : 1;
    const int inner_var = nf > 0 ? pl.free.back() : -1;
    for (std::int64_t ci = 0; ci < pl.g; ++ci) {
      const FqContext::Elt c = fq.exp(ci);
      auto res = parallel_chunks<std::pair<std::int64_t, std::int64_t>>(
          outer_size, threads, [&](std::int64_t lo, std::int64_t hi, unsigned) {
            std::vector<std::int64_t> lg(n, -1);  // discrete logs, -1 for zero
            std::vector<FqContext::Elt> x(n, 0);
            x[pl.j] = c;
            lg[pl.j] = fq.log(c);
            std::vector<FqContext::Elt> coef(inner_var >= 0 ? ws.alpha(inner_var) + 1 : 1);
            std::int64_t pts = 0, stab = 0;
            auto term_value = [&](const detail::LogTerm& t) -> FqContext::Elt {
              std::int64_t e = t.logc;
              for (int i = 0; i < n; ++i) {
                if (!t.e[i]) continue;
                if (lg[i] < 0) return 0;
                e += std::int64_t(t.e[i]) * lg[i];
              }
              return fq.exp(e % Q);
            };
            for (std::int64_t k = lo; k < hi; ++k) {
              std::int64_t rest = k;
              unsigned base_mask = 1u << pl.j;
              for (int t = nf - 2; t >= 0; --t) {
                int i = pl.free[t];
                x[i] = static_cast<FqContext::Elt>(rest % q);
                rest /= q;
                lg[i] = x[i] ? fq.log(x[i]) : -1;
                if (x[i]) base_mask |= 1u << i;
              }
              FqContext::Elt outer_val = 0;
              for (const auto& t : pl.outer) outer_val = fq.add(outer_val, term_value(t));
              if (pl.roots) {
                std::fill(coef.begin(), coef.end(), 0);
                coef[0] = outer_val;
                lg[inner_var] = 0;  // x_k = 1: the coefficient of x_k^e
                for (const auto& t : pl.inner) coef[t.e[inner_var]] = fq.add(coef[t.e[inner_var]], term_value(t));
                int nz = detail::distinct_roots(fq, coef);
                if (coef[0] == 0) {
                  --nz;
                  ++pts;
                  stab += detail::stabilizer(ws, base_mask, Q);
                }
                pts += nz;
                stab += nz * detail::stabilizer(ws, base_mask | (1u << inner_var), Q);
                continue;
              }
              for (std::int64_t v = 0; v < inner_size; ++v) {
                unsigned mask = base_mask;
                FqContext::Elt val = outer_val;
                if (inner_var >= 0) {
                  x[inner_var] = static_cast<FqContext::Elt>(v);
                  lg[inner_var] = v ? fq.log(x[inner_var]) : -1;
                  if (v) mask |= 1u << inner_var;
                  for (const auto& t : pl.inner) val = fq.add(val, term_value(t));
                }
                if (pl.solve < 0) {
                  if (val == 0) {
                    ++pts;
                    stab += detail::stabilizer(ws, mask, Q);
                  }
                  continue;
                }
                FqContext::Elt target = fq.neg(val);
                if (target == 0) {
                  ++pts;
                  stab += detail::stabilizer(ws, mask, Q);
                } else if (fq.log(target) % gs == 0) {
                  pts += gs;
                  stab += gs * detail::stabilizer(ws, mask | (1u << pl.solve), Q);
                }
              }
            }
            return std::make_pair(pts, stab);
          });
      std::int64_t pts = 0, stab = 0;
      for (auto [a, b] : res) {
        pts += a;
        stab += b;
      }
      cone += pts * (Q / pl.g);
      plan_stab += stab;
    }
    // an orbit with stabilizer H meets the slices in g_j / |H| points
    if (plan_stab % pl.g != 0) throw std::logic_error("orbit count is not integral");
    proj_total += plan_stab / pl.g;
  }
  pc.cone = cone;
  pc.projective = proj_total;
  return pc;
}


namespace detail {

// x with a*x = b mod m, all solutions in [0, m); empty when none exist.
inline std::vector<std::int64_t> solve_linear(std::int64_t a, std::int64_t b, std::int64_t m) {
  a = mod(a, m);
  b = mod(b, m);
  std::int64_t g = std::gcd(a, m);
  if (b % g != 0) return {};
  std::int64_t m2 = m / g, a2 = a / g, b2 = b / g;
  // inverse of a2 mod m2 via extended Euclid
  std::int64_t r0 = m2, r1 = a2 % m2, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t qt = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
  }
  std::int64_t x0 = m2 == 1 ? 0 : static_cast<std::int64_t>((__int128)mod(t0, m2) * b2 % m2);
  std::vector<std::int64_t> out;
  for (std::int64_t k = 0; k < g; ++k) out.push_back(x0 + k * m2);
  return out;
}

inline bool accept_integer(long double re, long double im, long double& rounded, double& residual) {
  rounded = std::round(re);
  long double res = std::max(std::fabs(re - rounded), std::fabs(im));
  residual = static_cast<double>(res);
  return res < kRoundTol * std::max<long double>(1, std::fabs(re));
}

}  // namespace detail

// Index tuples of the character-sum expansion on the torus of one coordinate
// stratum. Every admissible tuple is handed to visit(N, value): N_i is the
// character exponent of x_i divided by q-1 and value the tuple's contribution
// to the stratum sum over y != 0.
template <class R>
class CharSumStratum {
 public:
  CharSumStratum(const FamilySpec& fam, const FqContext& fq, const GaussSumTable<R>& gs, const FqParams& at,
                 unsigned mask)
      : fam_(fam), fq_(fq), gs_(gs), mask_(mask) {
    const int n = fam.n();
    Q_ = fq.order();
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) vars_.push_back(i);
    for (const auto& d : fam.deformations) {
      auto c = at.at(d.name);
      if (!c || (detail::support_mask(d.e.e) & ~mask)) continue;
      defs_.push_back(d.e.e);
      logc_.push_back(fq.log(c));
    }
    // (q-1)^(1-|J|)
    scale_ = R(1);
    int e = 1 - static_cast<int>(defs_.size());
    for (int k = 0; k < std::abs(e); ++k) scale_ = e > 0 ? scale_ * R(Q_) : scale_ / R(Q_);
  }

  std::int64_t deformation_tuples() const {
    std::int64_t t = 1;
    for (std::size_t j = 0; j < defs_.size(); ++j) t *= Q_;
    return t;
  }
  int active_deformations() const { return static_cast<int>(defs_.size()); }
  const std::vector<int>& vars() const { return vars_; }

  // Visits tuples whose deformation indices have linear index in [lo, hi).
  template <class Visit>
  void run(std::int64_t lo, std::int64_t hi, Visit&& visit) const {
    const int n = fam_.n();
    const int nv = static_cast<int>(vars_.size());
    const int nj = static_cast<int>(defs_.size());
    std::vector<std::int64_t> sj(nj), E(n), N(n, 0), s(n, 0);
    std::vector<std::vector<std::int64_t>> sols(nv);
    for (std::int64_t code = lo; code < hi; ++code) {
      std::int64_t rest = code, ssum = 0;
      for (int j = nj - 1; j >= 0; --j) {
        sj[j] = rest % Q_;
        rest /= Q_;
        ssum += sj[j];
      }
      std::fill(E.begin(), E.end(), 0);
      for (int j = 0; j < nj; ++j)
        for (int i = 0; i < n; ++i) E[i] += sj[j] * defs_[j][i];
      bool ok = true;
      for (int t = 0; t < nv && ok; ++t) {
        int i = vars_[t];
        sols[t] = detail::solve_linear(fam_.ws.alpha(i), -E[i], Q_);
        ok = !sols[t].empty();
      }
      if (!ok) continue;
      Cx<R> base(scale_);
      for (int j = 0; j < nj; ++j) base = base * gs_[sj[j]] * gs_.root(-sj[j] * logc_[j]);
      if (nv == 0) {
        if (ssum % Q_ == 0) visit(N, base);
        continue;
      }
      // all but the last variable enumerated, the last fixed by the sum condition
      std::vector<std::size_t> pick(nv, 0);
      while (true) {
        std::int64_t partial = ssum;
        for (int t = 0; t + 1 < nv; ++t) partial += sols[t][pick[t]];
        int il = vars_[nv - 1];
        std::int64_t slast = mod(-partial, Q_);
        if (mod(std::int64_t(fam_.ws.alpha(il)) * slast + E[il], Q_) == 0) {
          Cx<R> val = base;
          for (int t = 0; t + 1 < nv; ++t) {
            int i = vars_[t];
            s[i] = sols[t][pick[t]];
            val = val * gs_[s[i]];
          }
          s[il] = slast;
          val = val * gs_[slast];
          for (int i : vars_) N[i] = (s[i] * fam_.ws.alpha(i) + E[i]) / Q_;
          visit(N, val);
        }
        int t = nv - 2;
        while (t >= 0 && ++pick[t] == sols[t].size()) pick[t--] = 0;
        if (t < 0) break;
      }
    }
  }

  // Tuples whose label (N_i - 1 mod d/w_i) equals v, found without scanning
  // the variable indices: N_i is the unique value in its window.
  template <class Visit>
  void run_label(const ExponentVector& v, Visit&& visit) const {
    const int n = fam_.n();
    const int nj = static_cast<int>(defs_.size());
    for (int i = 0; i < n; ++i)
      if (!(mask_ >> i & 1u) && v[i] != fam_.ws.alpha(i) - 1) return;
    std::vector<std::int64_t> sj(nj), E(n), N(n, 0);
    const std::int64_t total = deformation_tuples();
    for (std::int64_t code = 0; code < total; ++code) {
      std::int64_t rest = code, ssum = 0;
      for (int j = nj - 1; j >= 0; --j) {
        sj[j] = rest % Q_;
        rest /= Q_;
        ssum += sj[j];
      }
      std::fill(E.begin(), E.end(), 0);
      for (int j = 0; j < nj; ++j)
        for (int i = 0; i < n; ++i) E[i] += sj[j] * defs_[j][i];
      bool ok = true;
      Cx<R> val(R(1));
      std::int64_t total_s = ssum;
      for (int i : vars_) {
        const std::int64_t a = fam_.ws.alpha(i);
        // Q*N in [E, E + Q*a) with N = v_i + 1 mod a
        std::int64_t lo = (E[i] + Q_ - 1) / Q_;
        std::int64_t Ni = lo + mod(v[i] + 1 - lo, a);
        std::int64_t num = Q_ * Ni - E[i];
        if (num % a != 0) {
          ok = false;
          break;
        }
        std::int64_t si = num / a;
        if (si >= Q_) {
          ok = false;
          break;
        }
        N[i] = Ni;
        total_s += si;
        val = val * gs_[si];
      }
      if (!ok || total_s % Q_ != 0) continue;
      Cx<R> base(scale_);
      for (int j = 0; j < nj; ++j) base = base * gs_[sj[j]] * gs_.root(-sj[j] * logc_[j]);
      visit(N, base * val);
    }
  }

 private:
  const FamilySpec& fam_;
  const FqContext& fq_;
  const GaussSumTable<R>& gs_;
  unsigned mask_;
  std::int64_t Q_ = 0;
  std::vector<int> vars_;
  std::vector<std::vector<int>> defs_;
  std::vector<std::int64_t> logc_;
  R scale_;
};

template <class R>
PointCount count_charsum_with(const FamilySpec& fam, const ParamPoint& at, const FqContext& fq,
                              const GaussSumTable<R>& gs, unsigned threads = 1) {
  const int n = fam.n();
  const std::int64_t q = fq.q(), Q = q - 1;
  auto params = reduce_params(fam, fq, at);
  PointCount pc;
  pc.q = q;
  pc.method = "charsum";
  std::int64_t cone = 1;
  std::int64_t proj_num = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    CharSumStratum<R> st(fam, fq, gs, params, mask);
    auto parts = parallel_chunks<Cx<R>>(st.deformation_tuples(), threads, [&](std::int64_t lo, std::int64_t hi, unsigned) {
      Cx<R> acc;
      st.run(lo, hi, [&](const std::vector<std::int64_t>&, const Cx<R>& v) { acc += v; });
      return acc;
    });
    Cx<R> S;
    for (const auto& x : parts) S += x;
    const int k = std::popcount(mask);
    long double torus = std::pow((long double)Q, (long double)k);
    long double rounded;
    double residual;
    long double re = static_cast<long double>(S.re), im = static_cast<long double>(S.im);
    if (!detail::accept_integer(re, im, rounded, residual))
      throw PrecisionError("character sum on a coordinate stratum is not an integer (residual " +
                           std::to_string(residual) + "); raise --precision");
    pc.residual = std::max(pc.residual, residual);
    long double total = torus + rounded;
    auto tot = static_cast<std::int64_t>(total);
    if (tot % q != 0) throw PrecisionError("character sum is inconsistent with an integer point count");
    std::int64_t Nt = tot / q;
    cone += Nt;
    proj_num += Nt * detail::stabilizer(fam.ws, mask, Q);
  }
  if (proj_num % Q != 0) throw std::logic_error("orbit count is not integral");
  pc.cone = cone;
  pc.projective = proj_num / Q;
  return pc;
}

// Runs fn.template operator()<R>(bits) at the requested precision, and once more
// at twice the precision if rounding fails.
template <class Fn>
decltype(auto) run_escalating(int bits, Fn&& fn) {
  try {
    return with_precision(bits, [&]<class R>() { return fn.template operator()<R>(bits); });
  } catch (const PrecisionError&) {
    const int b2 = 2 * bits;
    return with_precision(b2, [&]<class R>() { return fn.template operator()<R>(b2); });
  }
}

inline PointCount count_charsum(const FamilySpec& fam, const ParamPoint& at, const FqContext& fq, int bits = 128,
                                unsigned threads = 1) {
  return run_escalating(bits, [&]<class R>(int b) {
    auto gs = gauss_sums<R>(fq, b);
    return count_charsum_with<R>(fam, at, fq, gs, threads);
  });
}


// Classes of the family: orbits of M under adding the deformation monomials.
inline std::vector<BetaClass> family_classes(const FamilySpec& fam) {
  if (fam.deformations.empty()) throw DomainError("zeta.no_deformation", "family has no deformation monomial");
  const auto& ws = fam.ws;
  const auto& beta = fam.deformations[0].e;
  auto classes = beta_classes(ws, beta);
  ClassIndex idx(ws, classes);
  ExponentVector zero(std::vector<int>(ws.n(), 0));
  bool closed = true;
  for (const auto& d : fam.deformations) closed = closed && idx(d.e) == idx(zero);
  if (closed) return classes;
  // merge beta-classes connected by the other deformations
  std::vector<int> parent(classes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (const auto& d : fam.deformations) {
      int a = find(static_cast<int>(k)), b = find(idx(add_mod(classes[k].representative, d.e, ws)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, BetaClass> merged;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    auto& m = merged[find(static_cast<int>(k))];
    m.beta = beta;
    for (const auto& v : classes[k].members) m.members.push_back(v);
  }
  std::vector<BetaClass> out;
  for (auto& [root, c] : merged) {
    std::sort(c.members.begin(), c.members.end());
    c.representative = c.members.front();
    c.degree = class_degree(c, ws);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const BetaClass& a, const BetaClass& b) { return a.representative < b.representative; });
  return out;
}

// Label of an index tuple: v_i = N_i - 1 reduced mod d/w_i.
inline ExponentVector tuple_label(const WeightSystem& ws, const std::vector<std::int64_t>& N) {
  ExponentVector v(std::vector<int>(ws.n(), 0));
  for (int i = 0; i < ws.n(); ++i) v[i] = static_cast<int>(mod(N[i] - 1, ws.alpha(i)));
  return v;
}

inline ExponentVector top_label(const WeightSystem& ws) {
  ExponentVector v(std::vector<int>(ws.n(), 0));
  for (int i = 0; i < ws.n(); ++i) v[i] = ws.alpha(i) - 1;
  return v;
}

struct ClassDecomposition {
  std::int64_t q = 0;
  std::vector<std::complex<long double>> values;  // per class, contribution to the projective count
  Rational constant;                              // parameter independent part
  std::int64_t total = 0;
  double residual = 0;
  FqContext::Elt generator = 0;
};

namespace detail {

// Weight of a stratum in the projective count, and the Fermat-trivial term moved
// into the constant part: both divided by q*(q-1).
inline Rational stratum_weight(const WeightSystem& ws, unsigned mask, std::int64_t q) {
  return Rational(stabilizer(ws, mask, q - 1)) / Rational(BigInt(q) * (q - 1));
}

inline Rational constant_part(const WeightSystem& ws, std::int64_t q) {
  const std::int64_t Q = q - 1;
  Rational c = 0;
  for (unsigned mask = 1; mask < (1u << ws.n()); ++mask) {
    int k = std::popcount(mask);
    BigInt qk = 1;
    for (int t = 0; t < k; ++t) qk *= Q;
    c += stratum_weight(ws, mask, q) * Rational(qk + (k % 2 ? -Q : Q));
  }
  return c;
}

inline long double to_ld(const Rational& r) { return static_cast<long double>(r); }

}  // namespace detail

inline void require_split(const WeightSystem& ws, const FqContext& fq) {
  if ((fq.q() - 1) % ws.d != 0)
    throw DomainError("zeta.frobenius", "per-class contributions need q = 1 mod d (q=" + std::to_string(fq.q()) +
                                            ", d=" + std::to_string(ws.d) +
                                            "); for other q group classes into Frobenius orbits over F_{p^k}");
}

// Contributions of all classes to the projective point count over F_q.
template <class R>
ClassDecomposition class_contributions_with(const FamilySpec& fam, const ParamPoint& at, const FqContext& fq,
                                            const GaussSumTable<R>& gs, const std::vector<BetaClass>& classes,
                                            unsigned threads = 1) {
  const auto& ws = fam.ws;
  require_split(ws, fq);
  const int n = fam.n();
  const std::int64_t q = fq.q(), Q = q - 1;
  ClassIndex idx(ws, classes);
  auto params = reduce_params(fam, fq, at);
  std::vector<Cx<R>> acc(classes.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    CharSumStratum<R> st(fam, fq, gs, params, mask);
    R w = R(static_cast<long double>(detail::stabilizer(ws, mask, Q))) / (R(q) * R(Q));
    auto parts = parallel_chunks<std::vector<Cx<R>>>(
        st.deformation_tuples(), threads, [&](std::int64_t lo, std::int64_t hi, unsigned) {
          std::vector<Cx<R>> local(classes.size());
          st.run(lo, hi, [&](const std::vector<std::int64_t>& N, const Cx<R>& v) {
            local[idx(tuple_label(ws, N))] += v * w;
          });
          return local;
        });
    for (const auto& part : parts)
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += part[k];
  }
  ClassDecomposition out;
  out.q = q;
  out.generator = fq.generator();
  out.constant = detail::constant_part(ws, q);
  // the pure-Fermat trivial tuples were moved into the constant
  Rational moved = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    moved += detail::stratum_weight(ws, mask, q) * Rational(std::popcount(mask) % 2 ? -Q : Q);
  acc[idx(top_label(ws))] -= Cx<R>(R(detail::to_ld(moved)));
  std::complex<long double> sum = static_cast<long double>(detail::to_ld(out.constant));
  for (const auto& a : acc) {
    out.values.emplace_back(static_cast<long double>(a.re), static_cast<long double>(a.im));
    sum += out.values.back();
  }
  long double rounded;
  if (!detail::accept_integer(sum.real(), sum.imag(), rounded, out.residual))
    throw PrecisionError("class contributions do not sum to an integer count (residual " +
                         std::to_string(out.residual) + ")");
  out.total = static_cast<std::int64_t>(rounded);
  return out;
}

// Contributions of selected classes only, enumerated member by member.
template <class R>
std::vector<std::complex<long double>> selected_class_contributions_with(const FamilySpec& fam, const ParamPoint& at,
                                                                         const FqContext& fq, const GaussSumTable<R>& gs,
                                                                         const std::vector<BetaClass>& selected) {
  const auto& ws = fam.ws;
  require_split(ws, fq);
  const int n = fam.n();
  const std::int64_t q = fq.q(), Q = q - 1;
  auto params = reduce_params(fam, fq, at);
  Rational moved = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    moved += detail::stratum_weight(ws, mask, q) * Rational(std::popcount(mask) % 2 ? -Q : Q);
  const auto top = top_label(ws);
  std::vector<std::complex<long double>> out;
  for (const auto& c : selected) {
    Cx<R> acc;
    for (const auto& v : c.members)
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        CharSumStratum<R> st(fam, fq, gs, params, mask);
        R w = R(static_cast<long double>(detail::stabilizer(ws, mask, Q))) / (R(q) * R(Q));
        st.run_label(v, [&](const std::vector<std::int64_t>&, const Cx<R>& val) { acc += val * w; });
      }
    if (std::find(c.members.begin(), c.members.end(), top) != c.members.end())
      acc -= Cx<R>(R(detail::to_ld(moved)));
    out.emplace_back(static_cast<long double>(acc.re), static_cast<long double>(acc.im));
  }
  return out;
}

inline ClassDecomposition class_contributions(const FamilySpec& fam, const ParamPoint& at, const FqContext& fq,
                                              const std::vector<BetaClass>& classes, int bits = 128,
                                              unsigned threads = 1) {
  return run_escalating(bits, [&]<class R>(int b) {
    auto gs = gauss_sums<R>(fq, b);
    return class_contributions_with<R>(fam, at, fq, gs, classes, threads);
  });
}

// Classes grouped by the p-power Frobenius, acting on labels as v -> p(v+1) - 1.
inline std::vector<std::vector<int>> frobenius_orbits(const WeightSystem& ws, const std::vector<BetaClass>& classes,
                                                      std::int64_t p) {
  ClassIndex idx(ws, classes);
  std::vector<int> seen(classes.size(), 0);
  std::vector<std::vector<int>> out;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (seen[k]) continue;
    std::vector<int> orb;
    int cur = static_cast<int>(k);
    while (!seen[cur]) {
      seen[cur] = 1;
      orb.push_back(cur);
      ExponentVector v = classes[cur].representative;
      for (int i = 0; i < ws.n(); ++i) v[i] = static_cast<int>(mod(p * (v[i] + 1) - 1, ws.alpha(i)));
      cur = idx(v);
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(orb);
  }
  return out;
}

inline int multiplicative_order(std::int64_t p, std::int64_t d) {
  if (std::gcd(p, d) != 1) throw DomainError("zeta.order", "p must be coprime to d");
  std::int64_t x = mod(p, d);
  int k = 1;
  while (x != 1 % d) {
    x = x * p % d;
    ++k;
  }
  return k;
}


// ---- fitting ----

using CxL = std::complex<long double>;

// Roots of z^D + c[0] z^(D-1) + ... + c[D-1] (Durand-Kerner).
inline std::vector<CxL> monic_roots(const std::vector<CxL>& c) {
  const std::size_t D = c.size();
  if (D == 0) return {};
  long double bound = 1;
  for (const auto& x : c) bound = std::max(bound, 1 + std::abs(x));
  std::vector<CxL> z(D);
  for (std::size_t k = 0; k < D; ++k) z[k] = std::polar(bound * 0.9L, 2.0L * M_PIl * k / D + 0.4L);
  auto eval = [&](CxL x) {
    CxL v = 1;
    for (const auto& ck : c) v = v * x + ck;
    return v;
  };
  for (int it = 0; it < 2000; ++it) {
    long double move = 0;
    for (std::size_t k = 0; k < D; ++k) {
      CxL den = 1;
      for (std::size_t j = 0; j < D; ++j)
        if (j != k) den *= z[k] - z[j];
      if (std::abs(den) == 0) den = 1e-30L;
      CxL step = eval(z[k]) / den;
      z[k] -= step;
      move = std::max(move, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (move < 1e-24L) break;
  }
  // polish
  for (auto& x : z)
    for (int it = 0; it < 5; ++it) {
      CxL v = 1, dv = 0;
      for (const auto& ck : c) {
        dv = dv * x + v;
        v = v * x + ck;
      }
      if (std::abs(dv) == 0) break;
      x -= v / dv;
    }
  return z;
}

// Reciprocal roots of 1 + a[1] t + ... + a[D] t^D.
inline std::vector<CxL> reciprocal_roots(const std::vector<CxL>& a) {
  std::vector<CxL> c(a.begin() + 1, a.end());
  while (!c.empty() && std::abs(c.back()) == 0) c.pop_back();
  return monic_roots(c);
}

struct WeilCheck {
  bool ok = true;
  std::vector<int> weights;  // m with |root| = q^(m/2)
  double worst = 0;          // largest relative deviation
};

// Moduli p^(m/2) with integer m.
inline WeilCheck weil_check(const std::vector<CxL>& roots, std::int64_t p, double tol = 1e-6) {
  WeilCheck w;
  const long double lq = std::log((long double)p);
  for (const auto& r : roots) {
    long double a = std::abs(r);
    if (a == 0) {
      w.ok = false;
      w.worst = 1;
      w.weights.push_back(-1);
      continue;
    }
    int m = static_cast<int>(std::lround(2 * std::log(a) / lq));
    long double expect = std::pow((long double)p, m / 2.0L);
    double dev = static_cast<double>(std::fabs(a - expect) / expect);
    w.worst = std::max(w.worst, dev);
    if (dev > tol || m < 0) w.ok = false;
    w.weights.push_back(m);
  }
  std::sort(w.weights.begin(), w.weights.end());
  return w;
}

// Reciprocal roots of an exact polynomial 1 + a1 t + ..., repeated roots found
// on the squarefree factors.
inline std::vector<CxL> reciprocal_roots(const std::vector<Rational>& a) {
  Poly f({"t"});
  for (std::size_t k = 0; k < a.size(); ++k) f.add_term({static_cast<int>(k)}, a[k]);
  std::vector<CxL> out;
  if (f.is_constant()) return out;
  for (const auto& fa : squarefree_factors(f)) {
    int D = fa.factor.degree("t");
    std::vector<Rational> c(D + 1, 0);
    for (const auto& [m, v] : fa.factor.terms()) c[m.empty() ? 0 : m[0]] = v;
    std::vector<CxL> monic;
    for (int k = 1; k <= D; ++k) monic.emplace_back(static_cast<long double>(c[k] / c[0]), 0.0L);
    for (const auto& z : monic_roots(monic))
      for (int m = 0; m < fa.multiplicity; ++m) out.push_back(z);
  }
  return out;
}

inline bool near_integer(const CxL& z, long double& rounded) {
  rounded = std::round(z.real());
  long double scale = std::max(1.0L, std::abs(z));
  return std::fabs(z.real() - rounded) < kRoundTol * scale && std::fabs(z.imag()) < kRoundTol * scale;
}

struct FactorFit {
  bool fitted = false;
  std::vector<std::int64_t> coeffs;  // 1 + c1 t + ... as integers, when fitted
  WeilCheck weil;
  std::string reason;
};

// Integer polynomial prod (1 - lambda t) from power sums s_r = sum lambda^r, r = 1..R.
inline FactorFit fit_factor(const std::vector<CxL>& values, int max_degree, std::int64_t q, int weight = -1) {
  FactorFit f;
  const int R = static_cast<int>(values.size());
  if (max_degree > R) throw DomainError("zeta.samples", "fit_factor needs R >= max_degree (R=" + std::to_string(R) + ")");
  for (int D = 0; D <= max_degree; ++D) {
    // Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
    std::vector<CxL> e(D + 1);
    e[0] = 1;
    for (int k = 1; k <= D; ++k) {
      CxL acc = 0;
      for (int i = 1; i <= k; ++i) acc += ((i % 2) ? 1.0L : -1.0L) * e[k - i] * values[i - 1];
      e[k] = acc / (long double)k;
    }
    bool ok = true;
    for (int m = D + 1; m <= R && ok; ++m) {
      CxL pred = 0;
      for (int i = 1; i <= D; ++i) pred += ((i % 2) ? 1.0L : -1.0L) * e[i] * values[m - i - 1];
      long double scale = std::max(1.0L, std::abs(values[m - 1]));
      ok = std::abs(pred - values[m - 1]) < kRoundTol * scale;
    }
    if (!ok) continue;
    if (D == R && D < max_degree) continue;
    std::vector<CxL> a(D + 1);
    f.coeffs.assign(D + 1, 0);
    for (int k = 0; k <= D; ++k) {
      a[k] = ((k % 2) ? -1.0L : 1.0L) * e[k];
      long double r;
      if (!near_integer(a[k], r)) {
        f.reason = "power sums fit a polynomial of degree " + std::to_string(D) + " without integer coefficients";
        f.coeffs.clear();
        return f;
      }
      f.coeffs[k] = static_cast<std::int64_t>(r);
    }
    std::vector<Rational> exact;
    for (auto x : f.coeffs) exact.emplace_back(static_cast<long long>(x));
    f.weil = weil_check(reciprocal_roots(exact), q);
    if (weight >= 0)
      for (int m : f.weil.weights) f.weil.ok = f.weil.ok && m == weight;
    f.fitted = f.weil.ok;
    if (!f.fitted) f.reason = "reciprocal roots violate the Weil bound";
    return f;
  }
  f.reason = "no polynomial of degree <= " + std::to_string(max_degree) + " matches the power sums";
  return f;
}

inline std::string poly_in_t(const std::vector<std::int64_t>& c, const char* var = "t") {
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    std::int64_t a = c[k];
    std::string mono = k == 0 ? "" : (k == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(k));
    std::string mag = (std::llabs(a) == 1 && k > 0) ? "" : std::to_string(std::llabs(a));
    if (s.empty())
      s = (a < 0 ? "-" : "") + mag + mono;
    else
      s += (a < 0 ? " - " : " + ") + mag + mono;
  }
  return s.empty() ? "0" : s;
}

// Rational function num/den fitted to a power series with f_0 = 1.
struct RationalFit {
  bool fitted = false;
  int num_degree = 0, den_degree = 0;
  std::vector<CxL> num, den;
  bool verified = false;  // spare coefficients confirmed the fit
  bool integral = false;
  WeilCheck weil_num, weil_den;
  int required_terms = 0;  // when unfitted: series terms needed
  std::string reason;
  int degree() const { return num_degree - den_degree; }
};

namespace detail {

// Solves A x = b for square A by Gaussian elimination with partial pivoting.
template <class T, class Abs>
bool solve_square(std::vector<std::vector<T>> A, std::vector<T> b, std::vector<T>& x, Abs&& absval,
                  long double tol) {
  const std::size_t m = b.size();
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (absval(A[r][c]) > absval(A[piv][c])) piv = r;
    if (absval(A[piv][c]) <= tol) return false;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      T f = A[r][c] / A[c][c];
      if (absval(f) == 0) continue;
      for (std::size_t k = c; k < m; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(m);
  for (std::size_t c = 0; c < m; ++c) x[c] = b[c] / A[c][c];
  return true;
}

// Pade candidate [L/M] of series f (f[0] = 1).
template <class T, class Abs>
bool pade(const std::vector<T>& f, int L, int M, std::vector<T>& a, std::vector<T>& b, Abs&& absval, long double tol) {
  auto at = [&](int n) { return n >= 0 && n < static_cast<int>(f.size()) ? f[n] : T(0); };
  b.assign(M + 1, T(0));
  b[0] = T(1);
  if (M > 0) {
    std::vector<std::vector<T>> A(M, std::vector<T>(M));
    std::vector<T> rhs(M), x;
    for (int r = 0; r < M; ++r) {
      int n = L + 1 + r;
      for (int k = 1; k <= M; ++k) A[r][k - 1] = at(n - k);
      rhs[r] = -at(n);
    }
    if (!solve_square(A, rhs, x, absval, tol)) return false;
    for (int k = 1; k <= M; ++k) b[k] = x[k - 1];
  }
  a.assign(L + 1, T(0));
  for (int n = 0; n <= L; ++n)
    for (int k = 0; k <= M && k <= n; ++k) a[n] += b[k] * at(n - k);
  return true;
}

inline std::vector<CxL> exp_series(const std::vector<CxL>& c, int R) {
  // F = exp(sum c_r t^r / r): n F_n = sum_{r=1..n} c_r F_{n-r}
  std::vector<CxL> F(R + 1);
  F[0] = 1;
  for (int n = 1; n <= R; ++n) {
    CxL acc = 0;
    for (int r = 1; r <= n; ++r) acc += c[r - 1] * F[n - r];
    F[n] = acc / (long double)n;
  }
  return F;
}

}  // namespace detail

// Fits exp(sum_r c_r t^r / r) as a rational function of minimal total degree.
// A fit that uses every coefficient is accepted only when its roots satisfy the
// Weil moduli and no other split of the same total degree does.
inline RationalFit fit_rational(const std::vector<CxL>& c, std::int64_t q, int max_total = -1) {
  const int R = static_cast<int>(c.size());
  auto f = detail::exp_series(c, R);
  long double big = 1;
  for (const auto& x : f) big = std::max(big, std::abs(x));
  auto absval = [](const CxL& z) { return std::abs(z); };
  if (max_total < 0) max_total = R;
  RationalFit out;
  for (int s = 0; s <= std::min(R, max_total); ++s) {
    std::vector<RationalFit> cands;
    for (int M = 0; M <= s; ++M) {
      const int L = s - M;
      std::vector<CxL> a, b;
      if (!detail::pade(f, L, M, a, b, absval, 1e-12L)) continue;
      long double sa = 1, sb = 1;
      for (const auto& x : a) sa = std::max(sa, std::abs(x));
      for (const auto& x : b) sb = std::max(sb, std::abs(x));
      if (std::abs(a[L]) < 1e-7L * sa || std::abs(b[M]) < 1e-7L * sb) continue;
      bool ok = true;
      for (int n = s + 1; n <= R && ok; ++n) {
        CxL acc = 0;
        long double scale = 1;
        for (int k = 0; k <= M && k <= n; ++k) {
          acc += b[k] * f[n - k];
          scale = std::max(scale, std::abs(b[k] * f[n - k]));
        }
        ok = std::abs(acc) < kRoundTol * scale;
      }
      if (!ok) continue;
      RationalFit r;
      r.num_degree = L;
      r.den_degree = M;
      r.num = a;
      r.den = b;
      r.verified = s < R;
      r.integral = true;
      long double dummy;
      for (const auto& x : a) r.integral = r.integral && near_integer(x, dummy);
      for (const auto& x : b) r.integral = r.integral && near_integer(x, dummy);
      auto roots = [&](const std::vector<CxL>& v) {
        if (!r.integral) return reciprocal_roots(v);
        std::vector<Rational> e;
        for (const auto& x : v) e.emplace_back(static_cast<long long>(std::llround(x.real())));
        return reciprocal_roots(e);
      };
      r.weil_num = weil_check(roots(a), q);
      r.weil_den = weil_check(roots(b), q);
      cands.push_back(std::move(r));
    }
    if (cands.empty()) continue;
    std::vector<RationalFit> good;
    for (auto& r : cands)
      if (r.verified || (r.weil_num.ok && r.weil_den.ok)) good.push_back(r);
    if (good.size() == 1 || (!good.empty() && good.front().verified)) {
      out = good.front();
      out.fitted = true;
      return out;
    }
    if (good.size() > 1) {
      out.reason = "several rational functions of total degree " + std::to_string(s) + " fit " +
                   std::to_string(R) + " terms";
      out.required_terms = s + 1;
      return out;
    }
  }
  out.reason = "no rational function of total degree <= " + std::to_string(std::min(R, max_total)) + " fits";
  out.required_terms = R + 1;
  return out;
}

// ---- total zeta from exact counts ----

struct ZetaFit {
  std::int64_t p = 0;
  int r0 = 1;  // counts over F_{p^(r0 k)}, k = 1..R
  std::vector<std::int64_t> counts;
  bool fitted = false;
  std::vector<Rational> num, den;
  bool verified = false;
  WeilCheck weil_num, weil_den;
  int required_terms = 0;
  std::string reason;
  int degree() const { return static_cast<int>(num.size()) - static_cast<int>(den.size()); }
};

inline ZetaFit zeta_from_counts(const std::vector<std::int64_t>& N, std::int64_t q) {
  const int R = static_cast<int>(N.size());
  ZetaFit z;
  z.counts = N;
  if (R == 0) throw DomainError("zeta.samples", "no point counts supplied");
  std::vector<Rational> f(R + 1);
  f[0] = 1;
  for (int n = 1; n <= R; ++n) {
    Rational acc = 0;
    for (int r = 1; r <= n; ++r) acc += Rational(N[r - 1]) * f[n - r];
    f[n] = acc / n;
  }
  auto absval = [](const Rational& x) { return x == 0 ? 0.0L : 1.0L; };
  auto integral = [](const std::vector<Rational>& v) {
    for (const auto& x : v)
      if (boost::multiprecision::denominator(x) != 1) return false;
    return true;
  };
  for (int s = 0; s <= R; ++s) {
    std::vector<ZetaFit> good;
    for (int M = 0; M <= s; ++M) {
      const int L = s - M;
      std::vector<Rational> a, b;
      if (!detail::pade(f, L, M, a, b, absval, 0.0L)) continue;
      if (a[L] == 0 || b[M] == 0) continue;
      bool ok = true;
      for (int n = s + 1; n <= R && ok; ++n) {
        Rational acc = 0;
        for (int k = 0; k <= M && k <= n; ++k) acc += b[k] * f[n - k];
        ok = acc == 0;
      }
      if (!ok || !integral(a) || !integral(b)) continue;
      ZetaFit c = z;
      c.num = a;
      c.den = b;
      c.verified = s < R;
      c.weil_num = weil_check(reciprocal_roots(a), q);
      c.weil_den = weil_check(reciprocal_roots(b), q);
      if (!c.weil_num.ok || !c.weil_den.ok) continue;
      good.push_back(std::move(c));
    }
    if (good.size() == 1 || (!good.empty() && good.front().verified)) {
      ZetaFit c = good.front();
      c.fitted = true;
      return c;
    }
    if (good.size() > 1) {
      z.reason = "several zeta functions of total degree " + std::to_string(s) + " fit " + std::to_string(R) +
                 " counts";
      z.required_terms = s + 1;
      return z;
    }
  }
  z.reason = "no zeta function with integer coefficients and Weil moduli fits " + std::to_string(R) + " counts";
  z.required_terms = R + 1;
  return z;
}

inline std::string rational_poly_in_t(const std::vector<Rational>& c) {
  std::vector<std::int64_t> v;
  for (const auto& x : c) v.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(x)));
  return poly_in_t(v);
}

enum class CountMethod { Auto, BruteForce, CharSum };

inline PointCount count_points(const FamilySpec& fam, const ParamPoint& at, const FqContext& fq, CountMethod m,
                               std::int64_t budget, int bits, unsigned threads) {
  if (m == CountMethod::CharSum) return count_charsum(fam, at, fq, bits, threads);
  if (m == CountMethod::BruteForce) return count_bruteforce(fam, at, fq, budget, threads);
  try {
    return count_bruteforce(fam, at, fq, budget, threads);
  } catch (const BudgetExceeded&) {
    return count_charsum(fam, at, fq, bits, threads);
  }
}

struct ZetaOptions {
  CountMethod method = CountMethod::Auto;
  std::int64_t budget = kDefaultBudget;
  int bits = 128;
  unsigned threads = 1;
  std::function<void(const std::string&)> progress;
};

// Counts over F_{p^r}, r = 1..R, and the fitted zeta function.
inline ZetaFit zeta_total(const FamilySpec& fam, const ParamPoint& at, std::int64_t p, int R,
                          const ZetaOptions& opt = {}) {
  if (R < 1) throw DomainError("zeta.samples", "need R >= 1");
  std::vector<std::int64_t> N;
  for (int r = 1; r <= R; ++r) {
    auto fq = make_field(p, r);
    if (opt.progress) opt.progress("counting over F_" + std::to_string(fq.q()));
    N.push_back(count_points(fam, at, fq, opt.method, opt.budget, opt.bits, opt.threads).projective);
  }
  auto z = zeta_from_counts(N, p);
  z.p = p;
  return z;
}


// ---- per-class factors ----

struct ClassFit {
  int index = 0;  // into the class list
  std::vector<CxL> values;  // contribution over F_{q0^k}, k = 1..R
  RationalFit fit;
};

// Fits the factor of each listed class from contributions over F_{p^(r0 k)}, k = 1..R.
inline std::vector<ClassFit> fit_class_factors(const FamilySpec& fam, const ParamPoint& at, std::int64_t p, int r0,
                                               int R, const std::vector<BetaClass>& classes,
                                               const std::vector<int>& which, int bits = 128, unsigned threads = 1) {
  std::vector<ClassFit> out(which.size());
  for (std::size_t k = 0; k < which.size(); ++k) out[k].index = which[k];
  const bool all = which.size() == classes.size();
  std::vector<BetaClass> sel;
  for (int w : which) sel.push_back(classes.at(w));
  for (int k = 1; k <= R; ++k) {
    auto fq = make_field(p, r0 * k);
    if (all) {
      auto cd = class_contributions(fam, at, fq, classes, bits, threads);
      for (std::size_t j = 0; j < which.size(); ++j) out[j].values.push_back(cd.values[which[j]]);
    } else {
      auto vals = run_escalating(bits, [&]<class Rl>(int b) {
        auto gs = gauss_sums<Rl>(fq, b);
        return selected_class_contributions_with<Rl>(fam, at, fq, gs, sel);
      });
      for (std::size_t j = 0; j < which.size(); ++j) out[j].values.push_back(vals[j]);
    }
  }
  for (auto& cf : out) cf.fit = fit_rational(cf.values, p);
  return out;
}

// ---- degree change against Milnor number ----

struct ClassDegreeChange {
  std::string representative;
  int multiplicity = 1;
  int smooth = 0;
  int singular = 0;
};

struct DegreeReport {
  std::string mode;  // "arithmetic" or "combinatorial"
  std::string verdict;  // PASS, FAIL or INCONCLUSIVE
  int smooth_degree = 0;
  int singular_degree = 0;
  int change = 0;
  std::int64_t milnor_total = 0;
  std::vector<ClassDegreeChange> classes;
  std::optional<ZetaFit> smooth_fit, singular_fit;
  std::string note;
};

inline std::string verdict_for(bool conclusive, int change, std::int64_t milnor) {
  if (!conclusive) return "INCONCLUSIVE";
  return change == milnor ? "PASS" : "FAIL";
}

// Compares the fitted zeta degrees of a smooth and a singular fibre over F_p
// with the total Milnor number of the singular fibre.
inline DegreeReport verify_arithmetic(const FamilySpec& fam, const ParamPoint& smooth, const ParamPoint& singular,
                                      std::int64_t p, int R, std::int64_t milnor_total, const ZetaOptions& opt = {}) {
  if (fam.ws.d % p == 0) throw DomainError("zeta.bad_prime", "p divides the degree d");
  DegreeReport rep;
  rep.mode = "arithmetic";
  rep.milnor_total = milnor_total;
  rep.smooth_fit = zeta_total(fam, smooth, p, R, opt);
  rep.singular_fit = zeta_total(fam, singular, p, R, opt);
  rep.smooth_degree = rep.smooth_fit->degree();
  rep.singular_degree = rep.singular_fit->degree();
  rep.change = rep.smooth_degree - rep.singular_degree;
  bool ok = rep.smooth_fit->fitted && rep.singular_fit->fitted;
  if (!ok) {
    int need = std::max(rep.smooth_fit->required_terms, rep.singular_fit->required_terms);
    rep.note = "zeta fit failed: " + (rep.smooth_fit->fitted ? rep.singular_fit->reason : rep.smooth_fit->reason) +
               "; rerun with --rmax " + std::to_string(need);
  }
  rep.verdict = verdict_for(ok, rep.change, milnor_total);
  return rep;
}

// Per-class degree changes added to an arithmetic report, when q = p^R stays small.
inline void add_class_degrees(DegreeReport& rep, const FamilySpec& fam, const ParamPoint& smooth,
                              const ParamPoint& singular, std::int64_t p, int R, int bits = 128,
                              unsigned threads = 1) {
  auto classes = family_classes(fam);
  std::vector<int> all(classes.size());
  std::iota(all.begin(), all.end(), 0);
  auto a = fit_class_factors(fam, smooth, p, 1, R, classes, all, bits, threads);
  auto b = fit_class_factors(fam, singular, p, 1, R, classes, all, bits, threads);
  int sum = 0;
  bool ok = true;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    ok = ok && a[k].fit.fitted && b[k].fit.fitted;
    rep.classes.push_back({classes[k].representative.str(), 1, a[k].fit.degree(), b[k].fit.degree()});
    sum += a[k].fit.degree() - b[k].fit.degree();
  }
  if (!ok) {
    rep.note += std::string(rep.note.empty() ? "" : "; ") + "some class factors could not be fitted";
    rep.classes.clear();
  } else if (sum != rep.change) {
    rep.note += std::string(rep.note.empty() ? "" : "; ") + "class degree changes sum to " + std::to_string(sum);
  }
}

}  // namespace cyzeta
