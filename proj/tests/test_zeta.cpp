#include <gtest/gtest.h>

#include <random>

#include "cyzeta/zeta.hpp"

using namespace cyzeta;

namespace {

ExponentVector E(std::vector<int> v) { return ExponentVector(std::move(v)); }

FamilySpec one_param(std::vector<int> w, std::vector<int> beta) {
  return make_family(validate_weights(w), {{"a", E(beta)}});
}

FamilySpec cubic() { return one_param({1, 1, 1}, {1, 1, 1}); }

FamilySpec family11222() {
  return make_family(validate_weights({1, 1, 2, 2, 2}), {{"a", E({1, 1, 1, 1, 1})}, {"b", E({4, 4, 0, 0, 0})}});
}

ParamPoint A(Rational a) { return {{"a", a}}; }

std::vector<CxL> power_sums(const std::vector<CxL>& roots, int R) {
  std::vector<CxL> s;
  for (int r = 1; r <= R; ++r) {
    CxL acc = 0;
    for (const auto& x : roots) acc += std::pow(x, r);
    s.push_back(acc);
  }
  return s;
}

std::vector<CxL> reals(std::vector<long double> v) {
  std::vector<CxL> out;
  for (auto x : v) out.emplace_back(x, 0.0L);
  return out;
}

}  // namespace

TEST(BruteForce, FermatCubic) {
  auto pc = count_bruteforce(cubic(), A(0), make_field(7, 1));
  EXPECT_EQ(pc.projective, 9);
  EXPECT_EQ(pc.cone, 1 + 9 * 6);
}

TEST(BruteForce, QuinticOrbitStructure) {
  auto fam = one_param({1, 1, 1, 1, 1}, {1, 1, 1, 1, 1});
  auto pc = count_bruteforce(fam, A(0), make_field(11, 1));
  EXPECT_EQ((pc.cone - 1) % 10, 0);
  EXPECT_EQ(pc.projective, (pc.cone - 1) / 10);
}

TEST(BruteForce, SupersingularFermatCubic) {
  for (std::int64_t p : {5, 11, 17}) {
    auto pc = count_bruteforce(cubic(), A(0), make_field(p, 1));
    EXPECT_EQ(pc.projective, p + 1);
  }
}

TEST(BruteForce, WeightedStabilizers) {
  // x^4 + y^4 + z^2 in P(1,1,2): the point (0:0:1) has stabilizer of order 2
  auto fam = one_param({1, 1, 2}, {1, 1, 1});
  for (std::int64_t p : {3, 5, 7, 13}) {
    auto fq = make_field(p, 1);
    auto pc = count_bruteforce(fam, A(1), fq);
    std::int64_t q = fq.q(), brute = 0;
    // direct orbit count: points with x != 0 normalised to x = 1, then x = 0, y = 1
    for (std::int64_t y = 0; y < q; ++y)
      for (std::int64_t z = 0; z < q; ++z) {
        auto v = (1 + y * y * y * y + z * z + y * z) % q;
        if (v == 0) ++brute;
      }
    for (std::int64_t z = 0; z < q; ++z)
      if ((1 + z * z) % q == 0) ++brute;
    EXPECT_EQ(pc.projective, brute) << p;
  }
}

TEST(BruteForce, BudgetRefusal) {
  auto fam = one_param({1, 1, 1, 1, 1}, {1, 1, 1, 1, 1});
  EXPECT_THROW(count_bruteforce(fam, A(1), make_field(11, 1), 100), BudgetExceeded);
}

TEST(BruteForce, RootCountingAgreesWithScan) {
  auto fam = cubic();
  for (int a : {0, 1, 2, 5}) {
    auto fq = make_field(7, 3);
    auto fast = count_bruteforce(fam, A(a), fq);
    auto pc = count_charsum(fam, A(a), fq);
    EXPECT_EQ(fast.projective, pc.projective) << a;
  }
}

TEST(CharSum, CubicFibreTypes) {
  auto fam = cubic();
  for (int r : {1, 2})
    for (int a = 0; a < 7; ++a) {
      auto fq = make_field(7, r);
      auto bf = count_bruteforce(fam, A(a), fq);
      auto cs = count_charsum(fam, A(a), fq);
      EXPECT_EQ(bf.projective, cs.projective) << "a=" << a << " r=" << r;
      EXPECT_EQ(bf.cone, cs.cone);
      EXPECT_LT(cs.residual, 1e-6);
    }
  EXPECT_EQ(count_charsum(fam, A(4), make_field(7, 1)).projective, 21);
}

TEST(CharSum, RationalParameters) {
  auto fam = cubic();
  auto fq = make_field(13, 1);
  EXPECT_EQ(count_charsum(fam, A(Rational(1, 2)), fq).projective,
            count_bruteforce(fam, A(Rational(1, 2)), fq).projective);
  EXPECT_THROW(count_charsum(fam, A(Rational(1, 13)), fq), DomainError);
}

TEST(CharSumProperty, MatchesBruteForceRandomized) {
  struct Shape {
    FamilySpec fam;
    std::vector<std::pair<std::int64_t, int>> fields;
  };
  std::vector<Shape> shapes{
      {cubic(), {{7, 1}, {7, 2}, {5, 1}, {13, 1}}},
      {one_param({1, 1, 2}, {1, 1, 1}), {{3, 1}, {5, 1}, {13, 1}, {3, 2}}},
      {one_param({1, 1, 1, 1}, {1, 1, 1, 1}), {{5, 1}, {13, 1}, {3, 2}}},
      {one_param({1, 1, 1, 1}, {2, 1, 1, 0}), {{5, 1}, {13, 1}}},
      {one_param({1, 1, 1, 3}, {1, 1, 1, 1}), {{7, 1}, {13, 1}}},
      {one_param({1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}), {{11, 1}}},
      {family11222(), {{17, 1}, {3, 1}}},
  };
  std::mt19937 rng(20240611);
  int cases = 0;
  for (const auto& s : shapes)
    for (auto [p, r] : s.fields) {
      auto fq = make_field(p, r);
      for (int t = 0; t < 3; ++t) {
        ParamPoint at;
        for (const auto& d : s.fam.deformations) at[d.name] = Rational(static_cast<int>(rng() % (2 * p)) - p);
        auto bf = count_bruteforce(s.fam, at, fq);
        auto cs = count_charsum(s.fam, at, fq);
        ASSERT_EQ(bf.projective, cs.projective) << "q=" << fq.q();
        ASSERT_EQ(bf.cone, cs.cone);
        EXPECT_LT(cs.residual, 1e-6);
        ++cases;
      }
    }
  EXPECT_GE(cases, 20);
}

TEST(Classes, FamilyClassesOfTwoParameterFamily) {
  auto cl = family_classes(family11222());
  EXPECT_EQ(cl.size(), 64u);
  // b's monomial is a multiple of the a-monomial, so the classes are the beta-classes
  EXPECT_EQ(cl.size(), beta_classes(family11222().ws, E({1, 1, 1, 1, 1})).size());
}

TEST(Classes, SumToTotalCount) {
  auto check = [](const FamilySpec& fam, const ParamPoint& at, std::int64_t p, int r) {
    auto fq = make_field(p, r);
    auto cl = family_classes(fam);
    auto cd = class_contributions(fam, at, fq, cl);
    EXPECT_EQ(cd.total, count_bruteforce(fam, at, fq).projective) << "q=" << fq.q();
    // the constant part is what remains of the brute-force count
    std::complex<long double> sum = 0;
    for (const auto& v : cd.values) sum += v;
    long double rest = static_cast<long double>(count_bruteforce(fam, at, fq).projective) - sum.real();
    EXPECT_NEAR(static_cast<double>(rest), static_cast<double>(cd.constant), 1e-6);
  };
  for (int a : {0, 2, 3, 4}) check(cubic(), A(a), 7, 1);
  for (int a : {1, 5}) check(cubic(), A(a), 7, 2);
  for (int a : {1, 5}) check(cubic(), A(a), 13, 1);
  check(one_param({1, 1, 2}, {1, 1, 1}), A(3), 5, 1);
  check(one_param({1, 1, 2}, {1, 1, 1}), A(3), 13, 1);
  check(family11222(), {{"a", 1}, {"b", 0}}, 17, 1);
  check(family11222(), {{"a", 3}, {"b", 5}}, 17, 1);
}

TEST(Classes, ConstantIndependentOfParameter) {
  auto fam = cubic();
  auto cl = family_classes(fam);
  auto fq = make_field(13, 1);
  std::vector<Rational> consts;
  for (int a : {0, 2, 5, 7}) {
    auto cd = class_contributions(fam, A(a), fq, cl);
    std::complex<long double> sum = 0;
    for (const auto& v : cd.values) sum += v;
    long double rest = static_cast<long double>(count_bruteforce(fam, A(a), fq).projective) - sum.real();
    EXPECT_NEAR(static_cast<double>(rest), static_cast<double>(cd.constant), 1e-6);
    consts.push_back(cd.constant);
  }
  for (const auto& c : consts) EXPECT_EQ(c, consts.front());
  EXPECT_EQ(consts.front(), Rational(14));
}

TEST(Classes, GeneratorInvariance) {
  auto fam = family11222();
  auto cl = family_classes(fam);
  ParamPoint at{{"a", 2}, {"b", 7}};
  auto f1 = make_field(17, 1);
  auto f2 = make_field(17, 1, FqContext::kMaxQ, 5);
  ASSERT_NE(f1.generator(), f2.generator());
  auto c1 = class_contributions(fam, at, f1, cl);
  auto c2 = class_contributions(fam, at, f2, cl);
  for (std::size_t k = 0; k < cl.size(); ++k) EXPECT_LT(std::abs(c1.values[k] - c2.values[k]), 1e-9) << k;
  auto g1 = class_contributions(cubic(), A(3), make_field(7, 2), family_classes(cubic()));
  auto g2 = class_contributions(cubic(), A(3), make_field(7, 2, FqContext::kMaxQ, 7), family_classes(cubic()));
  for (std::size_t k = 0; k < g1.values.size(); ++k) EXPECT_LT(std::abs(g1.values[k] - g2.values[k]), 1e-9);
}

TEST(Classes, ConjugatePairsCombineToIntegers) {
  auto fam = family11222();
  const auto& ws = fam.ws;
  auto cl = family_classes(fam);
  ClassIndex idx(ws, cl);
  auto cd = class_contributions(fam, {{"a", 3}, {"b", 5}}, make_field(17, 1), cl);
  int nonreal = 0;
  for (std::size_t k = 0; k < cl.size(); ++k) {
    auto v = cl[k].representative;
    for (int i = 0; i < ws.n(); ++i) v[i] = static_cast<int>(mod(ws.alpha(i) - 2 - v[i], ws.alpha(i)));
    auto pair = cd.values[k] + cd.values[idx(v)];
    long double r;
    EXPECT_TRUE(near_integer(pair, r)) << cl[k].representative.str();
    if (std::fabs(cd.values[k].imag()) > 1e-6) ++nonreal;
  }
  EXPECT_GT(nonreal, 0);
}

TEST(Classes, SelectedMatchFullBinning) {
  auto fam = family11222();
  auto cl = family_classes(fam);
  auto fq = make_field(17, 1);
  ParamPoint at{{"a", 1}, {"b", 2}};
  auto full = class_contributions(fam, at, fq, cl);
  std::vector<BetaClass> sel{cl[0], cl[5], cl[17]};
  auto gs = gauss_sums<Float128>(fq, 128);
  auto part = selected_class_contributions_with<Float128>(fam, at, fq, gs, sel);
  EXPECT_LT(std::abs(part[0] - full.values[0]), 1e-9);
  EXPECT_LT(std::abs(part[1] - full.values[5]), 1e-9);
  EXPECT_LT(std::abs(part[2] - full.values[17]), 1e-9);
}

TEST(Classes, RefusesNonSplitField) {
  auto fam = cubic();
  EXPECT_THROW(class_contributions(fam, A(1), make_field(5, 1), family_classes(fam)), DomainError);
}

TEST(Frobenius, Orbits) {
  auto fam = family11222();
  auto cl = family_classes(fam);
  ClassIndex idx(fam.ws, cl);
  EXPECT_EQ(multiplicative_order(7, 8), 2);
  auto orbits = frobenius_orbits(fam.ws, cl, 7);
  auto orbit_of = [&](const ExponentVector& v) {
    int k = idx(v);
    for (const auto& o : orbits)
      if (std::find(o.begin(), o.end(), k) != o.end()) return o;
    return std::vector<int>{};
  };
  EXPECT_EQ(orbit_of(E({6, 2, 0, 0, 0})).size(), 1u);
  EXPECT_EQ(orbit_of(E({0, 2, 1, 1, 1})).size(), 2u);
  std::size_t total = 0;
  for (const auto& o : orbits) total += o.size();
  EXPECT_EQ(total, cl.size());
  for (const auto& o : frobenius_orbits(fam.ws, cl, 17)) EXPECT_EQ(o.size(), 1u);
}

TEST(FitFactor, Examples) {
  const long double p = 7;
  // 1 - 2pt + p^3 t^2
  std::vector<CxL> roots{{p, std::sqrt(p * p * p - p * p)}, {p, -std::sqrt(p * p * p - p * p)}};
  auto f = fit_factor(power_sums(roots, 4), 2, 7, 3);
  ASSERT_TRUE(f.fitted) << f.reason;
  EXPECT_EQ(f.coeffs, (std::vector<std::int64_t>{1, -14, 343}));

  auto one = fit_factor(reals({0, 0, 0}), 2, 7);
  ASSERT_TRUE(one.fitted);
  EXPECT_EQ(one.coeffs, std::vector<std::int64_t>{1});

  auto pm = fit_factor(reals({0, 2 * 49, 0, 2 * 2401}), 2, 7, 2);
  ASSERT_TRUE(pm.fitted) << pm.reason;
  EXPECT_EQ(pm.coeffs, (std::vector<std::int64_t>{1, 0, -49}));
  EXPECT_EQ(poly_in_t(pm.coeffs), "1 - 49t^2");
}

TEST(FitFactor, Unfitted) {
  EXPECT_FALSE(fit_factor(reals({0.5, 0.25, 0.125}), 2, 7).fitted);
  // 1 - 3t has a root of modulus 3, not a power of sqrt(7)
  auto bad = fit_factor(reals({3, 9, 27}), 2, 7);
  EXPECT_FALSE(bad.fitted);
  EXPECT_EQ(bad.coeffs, (std::vector<std::int64_t>{1, -3}));
  EXPECT_THROW(fit_factor(reals({1}), 2, 7), DomainError);
}

TEST(FitFactorProperty, WeilPolynomialsRoundTrip) {
  std::mt19937 rng(7);
  for (std::int64_t p : {5, 7, 11, 13}) {
    int bound = static_cast<int>(std::floor(2 * std::sqrt(double(p))));
    std::uniform_int_distribution<int> ua(-bound, bound);
    for (int t = 0; t < 10; ++t) {
      std::vector<CxL> roots;
      std::vector<std::int64_t> poly{1};
      for (int f = 0; f < 2; ++f) {
        int a = ua(rng);
        // 1 - a t + p t^2
        long double disc = 4.0L * p - (long double)a * a;
        roots.emplace_back(a / 2.0L, std::sqrt(disc) / 2);
        roots.emplace_back(a / 2.0L, -std::sqrt(disc) / 2);
        std::vector<std::int64_t> next(poly.size() + 2, 0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
          next[k] += poly[k];
          next[k + 1] += -a * poly[k];
          next[k + 2] += p * poly[k];
        }
        poly = next;
      }
      auto f = fit_factor(power_sums(roots, 6), 4, p, 1);
      ASSERT_TRUE(f.fitted) << f.reason;
      EXPECT_EQ(f.coeffs, poly);
      for (int m : f.weil.weights) EXPECT_EQ(m, 1);
      EXPECT_LT(f.weil.worst, 1e-6);
    }
  }
}

TEST(Fit, RationalFunctions) {
  // (1 - 7t)^-3: contributions +3 * 7^r
  std::vector<CxL> c;
  for (int r = 1; r <= 4; ++r) c.emplace_back(3 * std::pow(7.0L, r), 0);
  auto f = fit_rational(c, 7);
  ASSERT_TRUE(f.fitted);
  EXPECT_EQ(f.num_degree, 0);
  EXPECT_EQ(f.den_degree, 3);
  EXPECT_EQ(f.degree(), -3);
  EXPECT_TRUE(f.verified);
  EXPECT_TRUE(f.integral);
  // constant zero series: the trivial factor
  auto z = fit_rational(reals({0, 0, 0}), 7);
  ASSERT_TRUE(z.fitted);
  EXPECT_EQ(z.degree(), 0);
}

TEST(ZetaTotal, CubicOverF7) {
  auto fam = cubic();
  auto smooth = zeta_total(fam, A(3), 7, 4);
  ASSERT_TRUE(smooth.fitted) << smooth.reason;
  EXPECT_EQ(smooth.degree(), 0);
  EXPECT_EQ(rational_poly_in_t(smooth.num), "1 + t + 7t^2");
  EXPECT_EQ(rational_poly_in_t(smooth.den), "1 - 8t + 7t^2");
  auto node = zeta_total(fam, A(4), 7, 4);
  ASSERT_TRUE(node.fitted);
  EXPECT_EQ(node.degree(), -3);
  EXPECT_TRUE(node.verified);
  EXPECT_EQ(node.counts, (std::vector<std::int64_t>{21, 147, 1029, 7203}));
}

TEST(ZetaTotal, TooFewCounts) {
  auto z = zeta_total(cubic(), A(3), 7, 1);
  EXPECT_FALSE(z.fitted);
  EXPECT_GT(z.required_terms, 1);
}

TEST(SmoothFibreDegrees, Cubic) {
  auto fam = cubic();
  auto cl = family_classes(fam);
  std::vector<int> all{0, 1, 2};
  for (std::int64_t p : {7, 13})
    for (int a : {0, 3, 5, 6}) {
      if (p == 13 && a == 6) continue;
      auto fits = fit_class_factors(fam, A(a), p, 1, 3, cl, all);
      for (const auto& f : fits) {
        ASSERT_TRUE(f.fit.fitted) << f.fit.reason;
        EXPECT_TRUE(f.fit.integral);
        EXPECT_EQ(f.fit.degree(), cl[f.index].degree) << "p=" << p << " a=" << a << " class " << f.index;
      }
    }
}

TEST(Verify, CubicArithmetic) {
  auto rep = verify_arithmetic(cubic(), A(3), A(4), 7, 4, 3);
  EXPECT_EQ(rep.verdict, "PASS");
  EXPECT_EQ(rep.change, 3);
  add_class_degrees(rep, cubic(), A(3), A(4), 7, 3);
  ASSERT_EQ(rep.classes.size(), 3u);
  int sum = 0;
  for (const auto& c : rep.classes) sum += c.smooth - c.singular;
  EXPECT_EQ(sum, 3);
  auto short_run = verify_arithmetic(cubic(), A(3), A(4), 7, 1, 3);
  EXPECT_EQ(short_run.verdict, "INCONCLUSIVE");
  EXPECT_THROW(verify_arithmetic(cubic(), A(3), A(4), 3, 2, 3), DomainError);
}
