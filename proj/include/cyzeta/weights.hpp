#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyzeta/common.hpp"

namespace cyzeta {

struct WeightSystem {
  std::vector<int> w;
  int d = 0;

  int n() const { return static_cast<int>(w.size()); }
  int alpha(int i) const { return d / w[i]; }
  std::int64_t ambient_size() const {
    std::int64_t s = 1;
    for (int i = 0; i < n(); ++i) s *= alpha(i);
    return s;
  }
  bool operator==(const WeightSystem&) const = default;
};

inline std::string join_ints(const std::vector<int>& xs, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

inline WeightSystem validate_weights(const std::vector<int>& w) {
  if (w.empty()) throw DomainError("weights.empty", "weight list is empty");
  for (int x : w)
    if (x <= 0) throw DomainError("weights.nonpositive", "weights must be positive integers");
  if (w.size() < 3)
    throw DomainError("weights.too_few", "need at least 3 variables, got " + std::to_string(w.size()));
  int d = std::accumulate(w.begin(), w.end(), 0);
  for (int x : w)
    if (d % x != 0)
      throw DomainError("weights.divisibility", "weight " + std::to_string(x) +
                                                    " does not divide degree " + std::to_string(d));
  int g = 0;
  for (int x : w) g = std::gcd(g, x);
  if (g != 1) throw DomainError("weights.gcd", "weights have common factor " + std::to_string(g));
  return WeightSystem{w, d};
}

// Reduced exponent vector: entry i lives in 0..d/w_i-1.
struct ExponentVector {
  std::vector<int> e;

  ExponentVector() = default;
  ExponentVector(std::vector<int> v) : e(std::move(v)) {}
  ExponentVector(std::initializer_list<int> v) : e(v) {}

  int size() const { return static_cast<int>(e.size()); }
  int operator[](int i) const { return e[i]; }
  int& operator[](int i) { return e[i]; }
  auto operator<=>(const ExponentVector&) const = default;
  bool operator==(const ExponentVector&) const = default;
  std::string str() const { return "(" + join_ints(e) + ")"; }
};

inline std::int64_t weighted_degree(const ExponentVector& v, const WeightSystem& ws) {
  std::int64_t s = 0;
  for (int i = 0; i < ws.n(); ++i) s += std::int64_t(v[i]) * ws.w[i];
  return s;
}

inline bool is_reduced(const ExponentVector& v, const WeightSystem& ws) {
  if (v.size() != ws.n()) return false;
  for (int i = 0; i < ws.n(); ++i)
    if (v[i] < 0 || v[i] >= ws.alpha(i)) return false;
  return true;
}

inline bool in_M(const ExponentVector& v, const WeightSystem& ws) {
  return is_reduced(v, ws) && weighted_degree(v, ws) % ws.d == 0;
}

inline ExponentVector reduce(ExponentVector v, const WeightSystem& ws) {
  for (int i = 0; i < ws.n(); ++i) v[i] = static_cast<int>(mod(v[i], ws.alpha(i)));
  return v;
}

inline ExponentVector add_mod(const ExponentVector& a, const ExponentVector& b, const WeightSystem& ws,
                              int times = 1) {
  ExponentVector r = a;
  for (int i = 0; i < ws.n(); ++i) r[i] = static_cast<int>(mod(a[i] + std::int64_t(times) * b[i], ws.alpha(i)));
  return r;
}

inline int l_value(const ExponentVector& v, const WeightSystem& ws) {
  if (!in_M(v, ws)) throw DomainError("weights.not_in_M", v.str() + " is not in M");
  return static_cast<int>(weighted_degree(v, ws) / ws.d);
}

inline void require_degree_one(const ExponentVector& beta, const WeightSystem& ws) {
  if (beta.size() != ws.n())
    throw DomainError("weights.arity", "beta has " + std::to_string(beta.size()) + " entries, expected " +
                                           std::to_string(ws.n()));
  for (int i = 0; i < ws.n(); ++i)
    if (beta[i] < 0) throw DomainError("weights.beta", "beta entries must be non-negative");
  if (weighted_degree(beta, ws) != ws.d)
    throw DomainError("weights.beta_degree", "beta " + beta.str() + " does not have weighted degree d=" +
                                                 std::to_string(ws.d));
}

// Mixed-radix index of a reduced vector; used for dense lookup tables.
class MixedRadix {
 public:
  explicit MixedRadix(const WeightSystem& ws) {
    std::int64_t s = 1;
    for (int i = ws.n() - 1; i >= 0; --i) {
      radix_.insert(radix_.begin(), ws.alpha(i));
      stride_.insert(stride_.begin(), s);
      s *= ws.alpha(i);
    }
    total_ = s;
  }
  std::int64_t total() const { return total_; }
  std::int64_t encode(const ExponentVector& v) const {
    std::int64_t k = 0;
    for (std::size_t i = 0; i < radix_.size(); ++i) k += v[int(i)] * stride_[i];
    return k;
  }
  ExponentVector decode(std::int64_t k) const {
    ExponentVector v(std::vector<int>(radix_.size()));
    for (std::size_t i = 0; i < radix_.size(); ++i) {
      v[int(i)] = static_cast<int>(k / stride_[i]);
      k %= stride_[i];
    }
    return v;
  }

 private:
  std::vector<int> radix_;
  std::vector<std::int64_t> stride_;
  std::int64_t total_ = 1;
};

inline std::vector<ExponentVector> enumerate_M(const WeightSystem& ws) {
  const int n = ws.n();
  std::vector<ExponentVector> out;
  out.reserve(static_cast<std::size_t>(ws.ambient_size() / ws.d));
  std::vector<int> e(n, 0);
  std::int64_t deg = 0;
  while (true) {
    if (deg % ws.d == 0) out.emplace_back(e);
    int i = n - 1;
    while (i >= 0) {
      ++e[i];
      deg += ws.w[i];
      if (e[i] < ws.alpha(i)) break;
      deg -= std::int64_t(e[i]) * ws.w[i];
      e[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

struct BetaClass {
  ExponentVector representative;
  std::vector<ExponentVector> members;
  ExponentVector beta;
  int degree = 0;
};

inline int class_degree(const BetaClass& c, const WeightSystem& ws) {
  int deg = 0;
  for (const auto& m : c.members) {
    bool ok = true;
    for (int i = 0; i < ws.n() && ok; ++i) ok = m[i] != ws.alpha(i) - 1;
    deg += ok;
  }
  return deg;
}

inline std::int64_t beta_gcd(const WeightSystem& ws, const ExponentVector& beta) {
  std::int64_t g = 0;
  for (int i = 0; i < ws.n(); ++i)
    if (beta[i] != 0) g = std::gcd(g, std::int64_t(beta[i]) * ws.w[i]);
  return g;
}

inline std::int64_t d_beta(const WeightSystem& ws, const ExponentVector& beta) {
  return ws.d / beta_gcd(ws, beta);
}

// Orbit of v under repeated addition of step, starting at v.
inline std::vector<ExponentVector> orbit(const ExponentVector& v, const ExponentVector& step,
                                         const WeightSystem& ws) {
  std::vector<ExponentVector> out{v};
  for (auto x = add_mod(v, step, ws); x != v; x = add_mod(x, step, ws)) out.push_back(x);
  return out;
}

inline std::vector<BetaClass> beta_classes(const WeightSystem& ws, const ExponentVector& beta) {
  require_degree_one(beta, ws);
  MixedRadix mr(ws);
  std::vector<char> seen(static_cast<std::size_t>(mr.total()), 0);
  std::vector<BetaClass> out;
  // enumerate_M yields vectors in lex order, so the first unseen one is the lex-min member.
  for (const auto& v : enumerate_M(ws)) {
    if (seen[mr.encode(v)]) continue;
    BetaClass c;
    c.representative = v;
    c.beta = beta;
    c.members = orbit(v, beta, ws);
    for (const auto& m : c.members) seen[mr.encode(m)] = 1;
    c.degree = class_degree(c, ws);
    out.push_back(std::move(c));
  }
  return out;
}

// Maps every element of M to the index of its class.
class ClassIndex {
 public:
  ClassIndex(const WeightSystem& ws, const std::vector<BetaClass>& classes) : mr_(ws) {
    table_.assign(static_cast<std::size_t>(mr_.total()), -1);
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (const auto& m : classes[k].members) table_[mr_.encode(m)] = static_cast<int>(k);
  }
  int operator()(const ExponentVector& v) const { return table_[mr_.encode(v)]; }
  int at_code(std::int64_t code) const { return table_[code]; }
  const MixedRadix& radix() const { return mr_; }

 private:
  MixedRadix mr_;
  std::vector<int> table_;
};

inline std::int64_t T_beta(const WeightSystem& ws, const ExponentVector& beta, int k) {
  require_degree_one(beta, ws);
  if (k < 1 || k > ws.n()) throw DomainError("weights.k", "k out of range");
  for (int i = 0; i < ws.n(); ++i)
    if ((i < k) != (beta[i] != 0))
      throw DomainError("weights.beta_support", "beta must be nonzero exactly in the first k positions");
  std::int64_t gw = 0, prod = 1;
  for (int i = 0; i < k; ++i) {
    gw = std::gcd(gw, std::int64_t(ws.w[i]));
    prod *= ws.alpha(i);
  }
  std::int64_t num = gw * beta_gcd(ws, beta) * prod;
  std::int64_t den = std::int64_t(ws.d) * ws.d;
  if (num % den != 0 || num / den <= 0)
    throw DomainError("weights.T_beta", "T_beta is not a positive integer for " + beta.str());
  return num / den;
}

inline std::int64_t milnor_tuple_count(const WeightSystem& ws, int k) {
  if (k < 1 || k > ws.n()) throw DomainError("weights.k", "k out of range");
  int g = 0;
  for (int i = 0; i < k; ++i) g = std::gcd(g, ws.w[i]);
  if (g != 1)
    throw DomainError("weights.milnor_gcd", "gcd(w_1..w_k) = " + std::to_string(g) + " != 1");
  std::int64_t r = 1;
  for (int i = k; i < ws.n(); ++i) r *= ws.alpha(i) - 1;
  return r;
}

// Smallest positive (r, s) with r*alpha - s*beta = gcd(alpha, beta).
inline std::pair<std::int64_t, std::int64_t> bezout_pair(std::int64_t alpha, std::int64_t beta) {
  if (alpha <= 0 || beta <= 0) throw DomainError("weights.bezout", "bezout_pair needs positive inputs");
  std::int64_t r0 = alpha, r1 = beta, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  std::int64_t g = r0, r = x0, s = -y0;
  std::int64_t br = beta / g, as = alpha / g;
  // general solution: r + t*br, s + t*as
  std::int64_t t = 0;
  auto ceil_div = [](std::int64_t a, std::int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };
  t = std::max(ceil_div(1 - r, br), ceil_div(1 - s, as));
  return {r + t * br, s + t * as};
}

inline std::vector<std::int64_t> partition_product(const WeightSystem& ws, const std::vector<int>& ordering) {
  std::vector<int> o = ordering;
  if (o.empty()) {
    o.resize(ws.n());
    std::iota(o.begin(), o.end(), 0);
  }
  std::vector<int> chk = o;
  std::sort(chk.begin(), chk.end());
  for (int i = 0; i < ws.n(); ++i)
    if (int(chk.size()) != ws.n() || chk[i] != i)
      throw DomainError("weights.ordering", "ordering is not a permutation of 0..n-1");
  std::vector<std::int64_t> out;
  std::int64_t g = ws.w[o[0]];
  for (int i = 1; i < ws.n(); ++i) {
    out.push_back(std::gcd(std::int64_t(ws.alpha(o[i])), std::int64_t(ws.d) / g));
    g = std::gcd(g, std::int64_t(ws.w[o[i]]));
  }
  return out;
}

// (sigma v)_i = v_{sigma[i]}
inline ExponentVector permute(const ExponentVector& v, const std::vector<int>& sigma) {
  ExponentVector r = v;
  for (std::size_t i = 0; i < sigma.size(); ++i) r[int(i)] = v[sigma[i]];
  return r;
}

// Weight-preserving coordinate permutations fixing every vector in `fixed`.
inline std::vector<std::vector<int>> weight_symmetries(const WeightSystem& ws,
                                                       const std::vector<ExponentVector>& fixed) {
  std::vector<int> sigma(ws.n());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < ws.n() && ok; ++i) ok = ws.w[sigma[i]] == ws.w[i];
    for (const auto& f : fixed)
      if (ok) ok = permute(f, sigma) == f;
    if (ok) out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

struct ClassOrbit {
  int canonical = 0;         // index of the class holding the lex-min member of the orbit
  std::vector<int> classes;  // sorted class indices
  int multiplicity() const { return static_cast<int>(classes.size()); }
};

// Groups classes identified by the permutation group; orbits sorted by canonical representative.
inline std::vector<ClassOrbit> class_orbits(const WeightSystem& ws, const std::vector<BetaClass>& classes,
                                            const std::vector<std::vector<int>>& group) {
  ClassIndex idx(ws, classes);
  std::vector<int> owner(classes.size(), -1);
  std::vector<ClassOrbit> out;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (owner[k] >= 0) continue;
    ClassOrbit o;
    for (const auto& g : group) {
      int c = idx(permute(classes[k].representative, g));
      if (owner[c] < 0) {
        owner[c] = static_cast<int>(out.size());
        o.classes.push_back(c);
      }
    }
    std::sort(o.classes.begin(), o.classes.end());
    o.canonical = o.classes.front();
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace cyzeta
