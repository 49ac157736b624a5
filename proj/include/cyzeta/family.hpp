#pragma once

#include <map>
#include <string>
#include <vector>

#include "cyzeta/ffield.hpp"
#include "cyzeta/poly.hpp"
#include "cyzeta/weights.hpp"

namespace cyzeta {

struct Deformation {
  std::string name;
  ExponentVector e;
};

// Fermat polynomial sum x_i^{d/w_i} plus sum_j name_j * x^{e_j}.
struct FamilySpec {
  WeightSystem ws;
  std::vector<Deformation> deformations;

  int n() const { return ws.n(); }
  std::vector<std::string> parameter_names() const {
    std::vector<std::string> v;
    for (const auto& d : deformations) v.push_back(d.name);
    return v;
  }
  int index_of(const std::string& name) const {
    for (std::size_t j = 0; j < deformations.size(); ++j)
      if (deformations[j].name == name) return static_cast<int>(j);
    return -1;
  }
};

using ParamPoint = std::map<std::string, Rational>;

inline FamilySpec make_family(const WeightSystem& ws, std::vector<Deformation> defs) {
  for (std::size_t j = 0; j < defs.size(); ++j) {
    const auto& d = defs[j];
    if (d.name.empty()) throw DomainError("family.name", "deformation parameter needs a name");
    if (d.e.size() != ws.n())
      throw DomainError("family.arity", "deformation " + d.name + " has " + std::to_string(d.e.size()) +
                                            " exponents, expected " + std::to_string(ws.n()));
    if (!is_reduced(d.e, ws))
      throw DomainError("family.range", "deformation " + d.name + " exponent " + d.e.str() +
                                            " must satisfy 0 <= e_i < d/w_i");
    if (weighted_degree(d.e, ws) != ws.d)
      throw DomainError("family.degree", "deformation " + d.name + " " + d.e.str() +
                                             " does not have weighted degree " + std::to_string(ws.d));
    for (std::size_t k = 0; k < j; ++k) {
      if (defs[k].e == d.e) throw DomainError("family.duplicate", "deformation monomials must be distinct");
      if (defs[k].name == d.name) throw DomainError("family.duplicate", "duplicate parameter name " + d.name);
    }
  }
  return FamilySpec{ws, std::move(defs)};
}

// Defining polynomial over Q in variables x1..xn with the parameters substituted.
inline Poly family_polynomial(const FamilySpec& fam, const ParamPoint& at) {
  std::vector<std::string> xs;
  for (int i = 0; i < fam.n(); ++i) xs.push_back("x" + std::to_string(i + 1));
  Poly f(xs);
  for (int i = 0; i < fam.n(); ++i) {
    Poly::Mono m(fam.n(), 0);
    m[i] = fam.ws.alpha(i);
    f.add_term(m, 1);
  }
  for (const auto& d : fam.deformations) {
    auto it = at.find(d.name);
    if (it == at.end()) throw DomainError("family.unbound", "no value for parameter " + d.name);
    f.add_term(d.e.e, it->second);
  }
  return f;
}

// Sparse polynomial with coefficients in F_q, for the counting kernels.
struct FqPoly {
  struct Term {
    FqContext::Elt c;
    std::vector<int> e;
  };
  std::vector<Term> terms;

  FqContext::Elt eval(const FqContext& fq, const FqContext::Elt* x) const {
    FqContext::Elt acc = 0;
    for (const auto& t : terms) {
      FqContext::Elt v = t.c;
      for (std::size_t i = 0; i < t.e.size() && v; ++i)
        if (t.e[i]) v = fq.mul(v, fq.pow(x[i], t.e[i]));
      acc = fq.add(acc, v);
    }
    return acc;
  }
};

inline FqContext::Elt reduce_rational(const FqContext& fq, const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  BigInt pm = fq.p();
  long long nm = static_cast<long long>(((num % pm) + pm) % pm);
  long long dm = static_cast<long long>(((den % pm) + pm) % pm);
  if (dm == 0)
    throw DomainError("ffield.bad_reduction", "parameter " + to_string(r) + " has denominator divisible by p=" +
                                                  std::to_string(fq.p()));
  return fq.mul(fq.from_int(nm), fq.inv(fq.from_int(dm)));
}

// Parameter values already reduced into F_q.
using FqParams = std::map<std::string, FqContext::Elt>;

inline FqParams reduce_params(const FamilySpec& fam, const FqContext& fq, const ParamPoint& at) {
  FqParams out;
  for (const auto& d : fam.deformations) {
    auto it = at.find(d.name);
    if (it == at.end()) throw DomainError("family.unbound", "no value for parameter " + d.name);
    out[d.name] = reduce_rational(fq, it->second);
  }
  return out;
}

inline FqPoly family_fq(const FamilySpec& fam, const FqContext&, const FqParams& at) {
  FqPoly f;
  for (int i = 0; i < fam.n(); ++i) {
    std::vector<int> e(fam.n(), 0);
    e[i] = fam.ws.alpha(i);
    f.terms.push_back({1, e});
  }
  for (const auto& d : fam.deformations) {
    auto c = at.at(d.name);
    if (c) f.terms.push_back({c, d.e.e});
  }
  return f;
}

inline FqPoly partial_fq(const FqPoly& f, const FqContext& fq, int i) {
  FqPoly g;
  for (const auto& t : f.terms) {
    if (t.e[i] == 0) continue;
    auto c = fq.mul(t.c, fq.from_int(t.e[i]));
    if (!c) continue;
    auto e = t.e;
    --e[i];
    g.terms.push_back({c, e});
  }
  return g;
}

}  // namespace cyzeta
