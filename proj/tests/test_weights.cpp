#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cyzeta/weights.hpp"

using namespace cyzeta;

namespace {

// Plain nested-loop filter, independent of the odometer.
std::int64_t brute_M_size(const WeightSystem& ws) {
  std::int64_t total = ws.ambient_size(), cnt = 0;
  for (std::int64_t k = 0; k < total; ++k) {
    std::int64_t x = k, deg = 0;
    for (int i = ws.n() - 1; i >= 0; --i) {
      deg += (x % ws.alpha(i)) * ws.w[i];
      x /= ws.alpha(i);
    }
    cnt += deg % ws.d == 0;
  }
  return cnt;
}

const std::vector<std::vector<int>> kWeightSystems = {
    {1, 1, 1},       {1, 1, 2},       {1, 2, 3},       {1, 1, 1, 1},    {1, 1, 1, 3},
    {1, 1, 2, 2, 2}, {1, 1, 1, 1, 1}, {1, 1, 2, 2, 6}, {1, 1, 3, 3, 4}, {1, 1, 1, 1, 2, 2},
    {1, 1, 1, 1, 4}, {1, 2, 2, 3, 4}};

}  // namespace

TEST(Weights, ValidateAccepts) {
  EXPECT_EQ(validate_weights({1, 1, 1, 1, 1}).d, 5);
  EXPECT_EQ(validate_weights({1, 1, 2, 2, 2}).d, 8);
}

TEST(Weights, ValidateRejectsWithDistinctCodes) {
  auto code = [](std::vector<int> w) {
    try {
      validate_weights(w);
    } catch (const DomainError& e) {
      return e.code();
    }
    return std::string("accepted");
  };
  EXPECT_EQ(code({1, 1, 2, 2, 3}), "weights.divisibility");
  EXPECT_EQ(code({2, 2, 2, 2}), "weights.gcd");
  EXPECT_EQ(code({1, 1}), "weights.too_few");
  EXPECT_EQ(code({1, 0, 1}), "weights.nonpositive");
  EXPECT_EQ(code({}), "weights.empty");
}

TEST(Weights, EnumerateMCardinalities) {
  EXPECT_EQ(enumerate_M(validate_weights({1, 1, 1, 1, 1})).size(), 625u);
  EXPECT_EQ(enumerate_M(validate_weights({1, 1, 2, 2, 2})).size(), 512u);
  EXPECT_EQ(enumerate_M(validate_weights({1, 1, 1})).size(), 9u);
}

TEST(Weights, EnumerateMMatchesFormulaAndBruteForce) {
  for (const auto& w : kWeightSystems) {
    auto ws = validate_weights(w);
    auto M = enumerate_M(ws);
    EXPECT_EQ(std::int64_t(M.size()), ws.ambient_size() / ws.d);
    EXPECT_EQ(std::int64_t(M.size()), brute_M_size(ws));
    for (const auto& v : M) EXPECT_TRUE(in_M(v, ws));
    EXPECT_TRUE(std::is_sorted(M.begin(), M.end()));
  }
}

TEST(Weights, LValue) {
  auto q = validate_weights({1, 1, 1, 1, 1});
  EXPECT_EQ(l_value({0, 0, 0, 0, 0}, q), 0);
  EXPECT_EQ(l_value({1, 1, 1, 1, 1}, q), 1);
  EXPECT_EQ(l_value({4, 4, 4, 4, 4}, q), 4);
  EXPECT_THROW(l_value({1, 0, 0, 0, 0}, q), DomainError);
}

TEST(Weights, BetaClassCounts) {
  auto ws = validate_weights({1, 1, 2, 2, 2});
  auto cl = beta_classes(ws, {1, 1, 1, 1, 1});
  EXPECT_EQ(cl.size(), 64u);
  for (const auto& c : cl) EXPECT_EQ(c.members.size(), 8u);
  auto q = validate_weights({1, 1, 1, 1, 1});
  auto cq = beta_classes(q, {1, 1, 1, 1, 1});
  EXPECT_EQ(cq.size(), 125u);
  for (const auto& c : cq) EXPECT_EQ(c.members.size(), 5u);
  EXPECT_THROW(beta_classes(q, {1, 1, 1, 1, 0}), DomainError);
}

TEST(Weights, ClassOfOriginIsMultiplesOfBeta) {
  for (const auto& w : kWeightSystems) {
    auto ws = validate_weights(w);
    ExponentVector beta(std::vector<int>(ws.n(), 1));
    auto cl = beta_classes(ws, beta);
    const auto& c0 = cl.front();
    EXPECT_EQ(c0.representative, ExponentVector(std::vector<int>(ws.n(), 0)));
    for (std::size_t k = 0; k < c0.members.size(); ++k)
      EXPECT_EQ(c0.members[k], add_mod(ExponentVector(std::vector<int>(ws.n(), 0)), beta, ws, int(k)));
  }
}

TEST(Weights, ClassDegreeExamples) {
  auto ws = validate_weights({1, 1, 2, 2, 2});
  auto cl = beta_classes(ws, {1, 1, 1, 1, 1});
  ClassIndex idx(ws, cl);
  EXPECT_EQ(cl[idx({0, 0, 0, 0, 0})].degree, 6);
  EXPECT_EQ(cl[idx({4, 0, 2, 3, 1})].degree, 0);
  auto q = validate_weights({1, 1, 1, 1, 1});
  auto cq = beta_classes(q, {1, 1, 1, 1, 1});
  EXPECT_EQ(class_degree(cq.front(), q), 4);
}

TEST(Weights, ClassesPartitionM) {
  for (const auto& w : kWeightSystems) {
    auto ws = validate_weights(w);
    auto M = enumerate_M(ws);
    for (int j = 0; j < ws.n(); ++j) {
      // beta = x_j^{alpha_j - 1} * x_{j+1} when weights allow, else all ones
      ExponentVector beta(std::vector<int>(ws.n(), 1));
      int jn = (j + 1) % ws.n();
      if (ws.w[jn] <= ws.d - ws.w[j] && (ws.d - ws.w[jn]) % ws.w[j] == 0 && ws.alpha(j) > 1) {
        std::vector<int> b(ws.n(), 0);
        b[j] = (ws.d - ws.w[jn]) / ws.w[j];
        b[jn] = 1;
        if (b[j] < ws.alpha(j)) beta = ExponentVector(b);
      }
      auto cl = beta_classes(ws, beta);
      std::set<ExponentVector> seen;
      std::size_t total = 0;
      for (const auto& c : cl) {
        EXPECT_EQ(std::int64_t(c.members.size()), d_beta(ws, beta));
        EXPECT_EQ(c.representative, *std::min_element(c.members.begin(), c.members.end()));
        for (const auto& m : c.members) seen.insert(m);
        total += c.members.size();
      }
      EXPECT_EQ(total, M.size());
      EXPECT_EQ(seen.size(), M.size());
      EXPECT_EQ(std::int64_t(cl.size()), std::int64_t(M.size()) * beta_gcd(ws, beta) / ws.d);
    }
  }
}

TEST(Weights, DegreeSumInvariantUnderWeightPreservingRelabeling) {
  for (const auto& w : kWeightSystems) {
    auto ws = validate_weights(w);
    ExponentVector beta(std::vector<int>(ws.n(), 1));
    auto cl = beta_classes(ws, beta);
    int total = 0;
    for (const auto& c : cl) total += c.degree;
    for (const auto& sigma : weight_symmetries(ws, {})) {
      int permuted = 0;
      for (const auto& c : cl) {
        BetaClass pc;
        for (const auto& m : c.members) pc.members.push_back(permute(m, sigma));
        permuted += class_degree(pc, ws);
      }
      EXPECT_EQ(permuted, total);
    }
  }
}

TEST(Weights, TBetaExamples) {
  EXPECT_EQ(T_beta(validate_weights({1, 1, 2, 2, 2}), {1, 1, 1, 1, 1}, 5), 64);
  EXPECT_EQ(T_beta(validate_weights({1, 1, 1, 1, 1}), {1, 1, 1, 1, 1}, 5), 125);
  EXPECT_EQ(T_beta(validate_weights({1, 1, 2, 2, 6}), {1, 1, 1, 1, 1}, 5), 72);
  EXPECT_THROW(T_beta(validate_weights({1, 1, 1, 1, 1}), {1, 1, 1, 1, 1}, 4), DomainError);
}

TEST(Weights, TBetaEqualsClassesPerAdmissibleTail) {
  // Classes of the first k coordinates (beta restricted) sharing a fixed tail.
  struct Case {
    std::vector<int> w;
    std::vector<int> beta;
    int k;
  };
  std::vector<Case> cases = {{{1, 1, 2, 2, 2}, {1, 1, 1, 1, 1}, 5},
                             {{1, 1, 2, 2, 2}, {4, 4, 0, 0, 0}, 2},
                             {{1, 1, 1, 1, 1}, {2, 1, 1, 1, 0}, 4},
                             {{1, 1, 1, 1, 1}, {3, 2, 0, 0, 0}, 2},
                             {{1, 1, 2, 2, 6}, {6, 6, 0, 0, 0}, 2},
                             {{1, 1, 1, 1}, {2, 1, 1, 0}, 3},
                             {{1, 1, 3, 3, 4}, {4, 4, 0, 0, 1}, 2}};
  for (auto cs : cases) {
    auto ws = validate_weights(cs.w);
    ExponentVector beta(cs.beta);
    // reorder so that the nonzero entries come first, as T_beta expects
    std::vector<int> order(ws.n());
    std::iota(order.begin(), order.end(), 0);
    std::stable_partition(order.begin(), order.end(), [&](int i) { return beta[i] != 0; });
    std::vector<int> w2, b2;
    for (int i : order) {
      w2.push_back(ws.w[i]);
      b2.push_back(beta[i]);
    }
    WeightSystem ws2{w2, ws.d};
    int k = static_cast<int>(std::count_if(b2.begin(), b2.end(), [](int x) { return x != 0; }));
    auto cl = beta_classes(ws2, ExponentVector(b2));
    std::map<std::vector<int>, int> per_tail;
    for (const auto& c : cl) {
      std::vector<int> tail(c.representative.e.begin() + k, c.representative.e.end());
      ++per_tail[tail];
    }
    std::set<int> counts;
    for (const auto& [t, n] : per_tail) counts.insert(n);
    ASSERT_EQ(counts.size(), 1u) << ExponentVector(cs.beta).str();
    EXPECT_EQ(*counts.begin(), T_beta(ws2, ExponentVector(b2), k)) << ExponentVector(cs.beta).str();
  }
}

TEST(Weights, MilnorTupleCount) {
  EXPECT_EQ(milnor_tuple_count(validate_weights({1, 1, 2, 2, 2}), 5), 1);
  EXPECT_EQ(milnor_tuple_count(validate_weights({1, 1, 1, 1, 1}), 2), 64);
  EXPECT_EQ(milnor_tuple_count(validate_weights({1, 1, 2, 2, 2}), 2), 27);
  EXPECT_THROW(milnor_tuple_count(WeightSystem{{2, 2, 1, 1, 2}, 8}, 2), DomainError);
}

TEST(Weights, MilnorTupleCountMatchesBruteForce) {
  for (const auto& w : kWeightSystems) {
    auto ws = validate_weights(w);
    auto M = enumerate_M(ws);
    for (int k = 1; k <= ws.n(); ++k) {
      int g = 0;
      for (int i = 0; i < k; ++i) g = std::gcd(g, ws.w[i]);
      if (g != 1) continue;
      std::set<std::vector<int>> tails;
      for (const auto& v : M) {
        std::vector<int> t(v.e.begin() + k, v.e.end());
        bool ok = true;
        for (int i = k; i < ws.n(); ++i) ok = ok && v[i] != ws.alpha(i) - 1;
        if (ok) tails.insert(t);
      }
      EXPECT_EQ(std::int64_t(tails.size()), milnor_tuple_count(ws, k));
    }
  }
}

TEST(Weights, BezoutExamples) {
  EXPECT_EQ(bezout_pair(8, 4), std::make_pair(std::int64_t(1), std::int64_t(1)));
  EXPECT_EQ(bezout_pair(1, 1), std::make_pair(std::int64_t(2), std::int64_t(1)));
  EXPECT_EQ(bezout_pair(6, 4), std::make_pair(std::int64_t(1), std::int64_t(1)));
}

TEST(Weights, BezoutPropertyUpTo500) {
  for (std::int64_t a = 1; a <= 500; ++a)
    for (std::int64_t b = 1; b <= 500; ++b) {
      auto [r, s] = bezout_pair(a, b);
      ASSERT_GT(r, 0);
      ASSERT_GT(s, 0);
      ASSERT_EQ(r * a - s * b, std::gcd(a, b)) << a << " " << b;
    }
}

TEST(Weights, PartitionProduct) {
  auto ws = validate_weights({1, 1, 2, 2, 2});
  EXPECT_EQ(partition_product(ws, {0, 1, 2, 3, 4}), (std::vector<std::int64_t>{8, 4, 4, 4}));
  EXPECT_EQ(partition_product(validate_weights({1, 1, 1, 1, 1}), {}),
            (std::vector<std::int64_t>{5, 5, 5, 5}));
  auto re = partition_product(ws, {2, 3, 4, 0, 1});
  EXPECT_NE(re, partition_product(ws, {}));
  EXPECT_EQ(std::accumulate(re.begin(), re.end(), std::int64_t(1), std::multiplies<>()), 512);
}

TEST(Weights, PartitionProductEqualsCardinalityForAllOrderings) {
  for (const auto& w : kWeightSystems) {
    auto ws = validate_weights(w);
    std::int64_t m = ws.ambient_size() / ws.d;
    std::vector<int> o(ws.n());
    std::iota(o.begin(), o.end(), 0);
    do {
      auto f = partition_product(ws, o);
      EXPECT_EQ(std::accumulate(f.begin(), f.end(), std::int64_t(1), std::multiplies<>()), m);
    } while (std::next_permutation(o.begin(), o.end()));
  }
}

TEST(Weights, PermutationOrbitsOfFirstFamily) {
  auto ws = validate_weights({1, 1, 2, 2, 2});
  auto cl = beta_classes(ws, {1, 1, 1, 1, 1});
  auto group = weight_symmetries(ws, {{1, 1, 1, 1, 1}, {4, 4, 0, 0, 0}});
  EXPECT_EQ(group.size(), 12u);
  auto orbits = class_orbits(ws, cl, group);
  EXPECT_EQ(orbits.size(), 15u);
  int total = 0;
  for (const auto& o : orbits) total += o.multiplicity();
  EXPECT_EQ(total, 64);
}
