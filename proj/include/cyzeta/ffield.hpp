#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cyzeta/common.hpp"

namespace cyzeta {

using Float128 = boost::multiprecision::float128;
using Float256 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>;

template <class R>
struct Cx {
  R re{0}, im{0};

  Cx() = default;
  Cx(R a, R b = R(0)) : re(std::move(a)), im(std::move(b)) {}
  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return Cx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Cx operator*(const Cx& a, const R& s) { return Cx(a.re * s, a.im * s); }
  Cx conj() const { return Cx(re, -im); }
  R norm2() const { return re * re + im * im; }
};

template <class R>
R pi_v() {
  return boost::math::constants::pi<R>();
}

template <class R>
Cx<R> unit_root(std::int64_t k, std::int64_t m) {
  using std::cos;
  using std::sin;
  R ang = 2 * pi_v<R>() * R(k) / R(m);
  return Cx<R>(cos(ang), sin(ang));
}

// Calls f.template operator()<Real>() with the floating type matching `bits`.
template <class F>
decltype(auto) with_precision(int bits, F&& f) {
  if (bits < 64) throw DomainError("precision.floor", "precision below 64 bits is not supported");
  if (bits <= 64) return f.template operator()<long double>();
  if (bits <= 128) return f.template operator()<Float128>();
  return f.template operator()<Float256>();
}

// Finite field F_q with elements encoded as integers sum c_i p^i (coefficients of
// the residue polynomial). Nonzero elements are also addressed by discrete log.
class FqContext {
 public:
  using Elt = std::uint32_t;

  static constexpr std::int64_t kMaxQ = 10'000'000;

  // generator_power k selects g^k as generator, where g is the smallest one.
  static FqContext make(std::int64_t p, int r, std::int64_t max_q = kMaxQ, std::int64_t generator_power = 1) {
    if (p < 2 || p >= (std::int64_t(1) << 31) || !is_prime(static_cast<std::uint64_t>(p)))
      throw DomainError("ffield.composite", std::to_string(p) + " is not prime");
    if (r < 1) throw DomainError("ffield.degree", "extension degree must be positive");
    std::int64_t q = 1;
    for (int i = 0; i < r; ++i) {
      q *= p;
      if (q > max_q)
        throw DomainError("ffield.oversize", "field size " + std::to_string(p) + "^" + std::to_string(r) +
                                                 " exceeds table limit " + std::to_string(max_q));
    }
    FqContext f;
    f.p_ = static_cast<int>(p);
    f.r_ = r;
    f.q_ = q;
    if (q > 2 && std::gcd(mod(generator_power, q - 1), q - 1) != 1)
      throw DomainError("ffield.generator", "generator power must be coprime to q-1");
    f.gen_power_ = generator_power;
    f.build();
    return f;
  }

  int p() const { return p_; }
  int r() const { return r_; }
  std::int64_t q() const { return q_; }
  std::int64_t order() const { return q_ - 1; }
  Elt generator() const { return gen_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt from_int(std::int64_t v) const { return static_cast<Elt>(mod(v, p_)); }

  std::int64_t log(Elt a) const {
    if (a == 0) throw DomainError("ffield.log_zero", "discrete log of zero");
    return log_[a];
  }
  Elt exp(std::int64_t k) const { return exp_[static_cast<std::size_t>(mod(k, q_ - 1))]; }

  Elt add(Elt a, Elt b) const {
    if (r_ == 1) {
      std::uint64_t s = std::uint64_t(a) + b;
      return static_cast<Elt>(s >= std::uint64_t(p_) ? s - p_ : s);
    }
    if (a == 0) return b;
    if (b == 0) return a;
    std::int64_t la = log_[a], k = log_[b] - la;
    if (k < 0) k += q_ - 1;
    std::int64_t z = zech_[k];
    if (z < 0) return 0;
    std::int64_t e = la + z;
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Elt neg(Elt a) const {
    if (a == 0) return 0;
    if (r_ == 1) return static_cast<Elt>(p_ - a);
    std::int64_t e = log_[a] + neg_shift_;
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    std::int64_t e = std::int64_t(log_[a]) + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Elt inv(Elt a) const {
    if (a == 0) throw DomainError("ffield.inverse_zero", "inverse of zero");
    return exp_[log_[a] == 0 ? 0 : q_ - 1 - log_[a]];
  }
  Elt pow(Elt a, std::int64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    std::int64_t m = q_ - 1;
    __int128 k = (__int128)log_[a] * (__int128)mod(e, m);
    return exp_[static_cast<std::size_t>(k % m)];
  }
  Elt frobenius(Elt a) const { return pow(a, p_); }
  int trace(Elt a) const { return trace_[a]; }

  // Element for an integer or rational parameter value reduced mod p.
  Elt from_fraction(std::int64_t num, std::int64_t den) const {
    if (mod(den, p_) == 0)
      throw DomainError("ffield.bad_reduction", "denominator " + std::to_string(den) + " vanishes mod " +
                                                   std::to_string(p_));
    return mul(from_int(num), inv(from_int(den)));
  }

  std::string describe() const {
    std::string s = "F_" + std::to_string(q_) + " (p=" + std::to_string(p_) + ", r=" + std::to_string(r_) + ")";
    return s;
  }

 private:
  using PolyP = std::vector<int>;  // coefficients low to high, length r

  int p_ = 0, r_ = 0;
  std::int64_t q_ = 0;
  std::int64_t neg_shift_ = 0;
  Elt gen_ = 0;
  std::int64_t gen_power_ = 1;
  std::vector<int> modulus_;  // monic, length r+1
  std::vector<Elt> exp_;
  std::vector<std::int32_t> log_;
  std::vector<std::int32_t> zech_;
  std::vector<std::int32_t> trace_;

  PolyP decode(std::int64_t a) const {
    PolyP v(r_);
    for (int i = 0; i < r_; ++i) {
      v[i] = static_cast<int>(a % p_);
      a /= p_;
    }
    return v;
  }
  std::int64_t encode(const PolyP& v) const {
    std::int64_t a = 0;
    for (int i = r_ - 1; i >= 0; --i) a = a * p_ + v[i];
    return a;
  }

  // Product of residues modulo a monic polynomial f of degree r.
  static PolyP mulmod(const PolyP& a, const PolyP& b, const std::vector<int>& f, int p) {
    int r = static_cast<int>(f.size()) - 1;
    std::vector<std::int64_t> t(2 * r, 0);
    for (int i = 0; i < r; ++i)
      if (a[i])
        for (int j = 0; j < r; ++j) t[i + j] = (t[i + j] + std::int64_t(a[i]) * b[j]) % p;
    for (int k = 2 * r - 2; k >= r; --k) {
      std::int64_t c = t[k] % p;
      if (!c) continue;
      for (int i = 0; i <= r; ++i) t[k - r + i] = mod(t[k - r + i] - c * f[i], p);
    }
    PolyP out(r);
    for (int i = 0; i < r; ++i) out[i] = static_cast<int>(mod(t[i], p));
    return out;
  }
  static PolyP powmod(PolyP a, std::int64_t e, const std::vector<int>& f, int p) {
    int r = static_cast<int>(f.size()) - 1;
    PolyP res(r, 0);
    res[0] = 1;
    while (e > 0) {
      if (e & 1) res = mulmod(res, a, f, p);
      a = mulmod(a, a, f, p);
      e >>= 1;
    }
    return res;
  }

  // gcd of two polynomials over F_p (coefficient vectors low to high); returns degree.
  static int gcd_degree(std::vector<int> a, std::vector<int> b, int p) {
    auto trim = [](std::vector<int>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto inv = [p](std::int64_t x) {
      std::int64_t r = 1, e = p - 2;
      x = mod(x, p);
      while (e) {
        if (e & 1) r = r * x % p;
        x = x * x % p;
        e >>= 1;
      }
      return r;
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
      while (a.size() >= b.size()) {
        std::int64_t c = a.back() * inv(b.back()) % p;
        std::size_t sh = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] = static_cast<int>(mod(a[sh + i] - c * b[i], p));
        trim(a);
        if (a.empty()) break;
      }
      std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
  }

  static bool irreducible(const std::vector<int>& f, int p) {
    int r = static_cast<int>(f.size()) - 1;
    if (r == 1) return true;
    PolyP x(r, 0);
    x[1] = 1;
    std::int64_t pr = 1;
    for (int i = 0; i < r; ++i) pr *= p;
    if (powmod(x, pr, f, p) != x) return false;
    for (auto t : prime_factors(r)) {
      std::int64_t e = 1;
      for (int i = 0; i < r / t; ++i) e *= p;
      PolyP h = powmod(x, e, f, p);
      h[1] = static_cast<int>(mod(h[1] - 1, p));
      if (gcd_degree(h, f, p) != 0) return false;
    }
    return true;
  }

  void build() {
    const std::int64_t m = q_ - 1;
    if (r_ == 1) {
      modulus_ = {0, 1};
    } else {
      for (std::int64_t c = 0;; ++c) {
        std::vector<int> f(r_ + 1);
        std::int64_t t = c;
        for (int i = 0; i < r_; ++i) {
          f[i] = static_cast<int>(t % p_);
          t /= p_;
        }
        f[r_] = 1;
        if (f[0] == 0) continue;
        if (irreducible(f, p_)) {
          modulus_ = f;
          break;
        }
      }
    }
    auto factors = prime_factors(m);
    auto elt_pow = [&](std::int64_t a, std::int64_t e) -> std::int64_t {
      if (r_ == 1) {
        std::int64_t res = 1, b = a % p_;
        while (e) {
          if (e & 1) res = res * b % p_;
          b = b * b % p_;
          e >>= 1;
        }
        return res;
      }
      return encode(powmod(decode(a), e, modulus_, p_));
    };
    for (std::int64_t g = 1; g < q_; ++g) {
      bool ok = true;
      if (m > 1)
        for (auto l : factors)
          if (elt_pow(g, m / l) == 1) {
            ok = false;
            break;
          }
      if (ok && (m > 1 || g == 1)) {
        gen_ = static_cast<Elt>(g);
        break;
      }
    }
    if (m > 1 && gen_power_ != 1) gen_ = static_cast<Elt>(elt_pow(gen_, mod(gen_power_, m)));
    exp_.assign(m, 0);
    log_.assign(q_, -1);
    if (r_ == 1) {
      std::int64_t x = 1;
      for (std::int64_t k = 0; k < m; ++k) {
        exp_[k] = static_cast<Elt>(x);
        log_[x] = static_cast<std::int32_t>(k);
        x = x * gen_ % p_;
      }
    } else {
      PolyP x(r_, 0), g = decode(gen_);
      x[0] = 1;
      for (std::int64_t k = 0; k < m; ++k) {
        std::int64_t code = encode(x);
        exp_[k] = static_cast<Elt>(code);
        log_[code] = static_cast<std::int32_t>(k);
        x = mulmod(x, g, modulus_, p_);
      }
    }
    for (std::int64_t k = 0; k < q_; ++k)
      if (k > 0 && log_[k] < 0) throw std::logic_error("generator does not span the field");
    neg_shift_ = (p_ == 2) ? 0 : m / 2;
    zech_.assign(m, -1);
    for (std::int64_t k = 0; k < m; ++k) {
      std::int64_t a = exp_[k];
      std::int64_t low = a % p_;
      std::int64_t b = a - low + (low + 1) % p_;
      zech_[k] = b == 0 ? -1 : log_[b];
    }
    // trace of the basis monomials x^i, then extend linearly
    std::vector<int> tb(r_, 0);
    for (int i = 0; i < r_; ++i) {
      if (r_ == 1) {
        tb[0] = 1;
        break;
      }
      PolyP xi(r_, 0);
      xi[i] = 1;
      PolyP acc(r_, 0), cur = xi;
      std::int64_t pe = p_;
      for (int j = 0; j < r_; ++j) {
        for (int c = 0; c < r_; ++c) acc[c] = (acc[c] + cur[c]) % p_;
        cur = powmod(cur, pe, modulus_, p_);
      }
      for (int c = 1; c < r_; ++c)
        if (acc[c] != 0) throw std::logic_error("trace left F_p");
      tb[i] = acc[0];
    }
    trace_.assign(q_, 0);
    for (std::int64_t a = 0; a < q_; ++a) {
      std::int64_t t = 0, x = a;
      for (int i = 0; i < r_; ++i) {
        t += (x % p_) * tb[i];
        x /= p_;
      }
      trace_[a] = static_cast<std::int32_t>(t % p_);
    }
  }
};

inline FqContext make_field(std::int64_t p, int r, std::int64_t max_q = FqContext::kMaxQ,
                            std::int64_t generator_power = 1) {
  return FqContext::make(p, r, max_q, generator_power);
}

template <class R>
Cx<R> additive_character(const FqContext& fq, FqContext::Elt x) {
  return unit_root<R>(fq.trace(x), fq.p());
}

template <class R>
Cx<R> mult_character(const FqContext& fq, std::int64_t s, FqContext::Elt x) {
  if (x == 0) throw DomainError("ffield.character_zero", "multiplicative character undefined at 0");
  std::int64_t m = fq.order();
  std::int64_t k = static_cast<std::int64_t>((__int128)mod(s, m) * fq.log(x) % m);
  return unit_root<R>(k, m);
}

// G_s = sum over x != 0 of Theta(x) omega^s(x), for s = 0..q-2, together with the
// (q-1)-th roots of unity used to evaluate omega.
template <class R>
class GaussSumTable {
 public:
  GaussSumTable() = default;
  GaussSumTable(const FqContext& fq, int bits) : bits_(bits), m_(fq.order()), p_(fq.p()) {
    roots_.resize(m_);
    for (std::int64_t j = 0; j < m_; ++j) roots_[j] = unit_root<R>(j, m_);
    std::vector<Cx<R>> proot(p_);
    for (int t = 0; t < p_; ++t) proot[t] = unit_root<R>(t, p_);
    std::vector<int> tr(m_);
    for (std::int64_t k = 0; k < m_; ++k) tr[k] = fq.trace(fq.exp(k));
    values_.assign(m_, Cx<R>());
    std::vector<char> done(m_, 0);
    for (std::int64_t s = 0; s < m_; ++s) {
      if (done[s]) continue;
      Cx<R> acc;
      std::int64_t idx = 0;
      for (std::int64_t k = 0; k < m_; ++k) {
        acc += proot[tr[k]] * roots_[idx];
        idx += s;
        if (idx >= m_) idx -= m_;
      }
      // G_{ps} = G_s
      std::int64_t t = s;
      do {
        values_[t] = acc;
        done[t] = 1;
        t = static_cast<std::int64_t>((__int128)t * p_ % m_);
      } while (t != s);
    }
  }

  int bits() const { return bits_; }
  std::int64_t size() const { return m_; }
  const Cx<R>& operator[](std::int64_t s) const { return values_[mod(s, m_)]; }
  // exp(2 pi i j / (q-1))
  const Cx<R>& root(std::int64_t j) const { return roots_[mod(j, m_)]; }

 private:
  int bits_ = 0;
  std::int64_t m_ = 0;
  int p_ = 0;
  std::vector<Cx<R>> values_;
  std::vector<Cx<R>> roots_;
};

template <class R>
GaussSumTable<R> gauss_sums(const FqContext& fq, int bits) {
  if (bits < 64) throw DomainError("precision.floor", "precision below 64 bits is not supported");
  return GaussSumTable<R>(fq, bits);
}

}  // namespace cyzeta
