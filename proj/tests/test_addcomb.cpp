#include <gtest/gtest.h>

#include <random>

#include "fracsum/addcomb.hpp"
#include "oracles.hpp"

using namespace fracsum;
using namespace fracsum::addcomb;

namespace {

std::set<std::int64_t> as_set(const GroupSubset& g) {
  const auto v = g.values();
  return {v.begin(), v.end()};
}

std::set<std::vector<std::int64_t>> tuples_of(const GroupSubset& g) {
  return {g.elements().begin(), g.elements().end()};
}

// |{(x1+x2+x3, x1+x4+x5) mod n}| over K^5.
std::size_t conj5_pairs_oracle(const std::vector<std::int64_t>& k, std::int64_t n) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (auto a : k)
    for (auto b : k)
      for (auto c : k)
        for (auto d : k)
          for (auto e : k) out.insert({oracle::mod(a + b + c, n), oracle::mod(a + d + e, n)});
  return out.size();
}

// K + s_1 K + ... by direct enumeration.
std::set<std::int64_t> signed_sum_oracle(const std::vector<std::int64_t>& k, const std::vector<int>& signs, std::int64_t n) {
  std::set<std::int64_t> acc(k.begin(), k.end());
  for (std::size_t i = 1; i < signs.size(); ++i) {
    std::set<std::int64_t> next;
    for (auto a : acc)
      for (auto b : k) next.insert(oracle::mod(a + signs[i] * b, n));
    acc = next;
  }
  return acc;
}

}  // namespace

TEST(GroupSubset, NormalizesAndValidates) {
  const auto g = GroupSubset::cyclic(5, {7, 2, -3, 0});
  EXPECT_EQ(g.values(), (std::vector<std::int64_t>{0, 2}));
  EXPECT_THROW(GroupSubset::cyclic(1, {0}), std::invalid_argument);
  EXPECT_THROW(GroupSubset(5, 2, {{1}}), std::invalid_argument);
  EXPECT_EQ(GroupSubset::full(6).size(), 6u);
  EXPECT_THROW(sum_sets(GroupSubset::cyclic(5, {0}), GroupSubset::cyclic(6, {0})), std::invalid_argument);
}

TEST(SumSets, SpecExamples) {
  EXPECT_EQ(as_set(sum_sets(GroupSubset::cyclic(5, {0, 1}), GroupSubset::cyclic(5, {0}))), (std::set<std::int64_t>{0, 1}));
  EXPECT_EQ(sum_sets(GroupSubset::cyclic(5, {0, 1}), GroupSubset::full(5)).size(), 5u);
  EXPECT_EQ(as_set(sum_sets(GroupSubset::cyclic(4, {0, 2}), GroupSubset::cyclic(4, {0, 2}))), (std::set<std::int64_t>{0, 2}));
}

TEST(SumSets, MatchBruteForceOnSmallAndLargeModuli) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 100);
    std::vector<std::int64_t> a, b;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 8); ++i) a.push_back(static_cast<std::int64_t>(rng() % 200));
    for (int i = 0; i < 1 + static_cast<int>(rng() % 8); ++i) b.push_back(static_cast<std::int64_t>(rng() % 200));
    const auto ga = GroupSubset::cyclic(n, a), gb = GroupSubset::cyclic(n, b);
    EXPECT_EQ(as_set(sum_sets(ga, gb)), oracle::sumset_mod(ga.values(), gb.values(), n));
    EXPECT_EQ(as_set(signed_sum(ga, {1, -1})), oracle::sumset_mod(ga.values(), ga.values(), n, -1));
  }
}

TEST(SumSets, IntegersWhenModulusIsZero) {
  const auto a = GroupSubset::cyclic(0, {0, 3, 10});
  EXPECT_EQ(as_set(sum_sets(a, a)), (std::set<std::int64_t>{0, 3, 6, 10, 13, 20}));
  EXPECT_EQ(as_set(negated(a)), (std::set<std::int64_t>{-10, -3, 0}));
}

TEST(SignedSum, MatchesBruteForce) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 70);
    const auto k = GroupSubset::cyclic(n, oracle::subset(rng(), std::min<std::int64_t>(n, 64)));
    if (k.empty()) continue;
    std::vector<int> signs{1};
    for (int i = 0; i < 1 + static_cast<int>(rng() % 3); ++i) signs.push_back(rng() % 2 ? 1 : -1);
    EXPECT_EQ(as_set(signed_sum(k, signs)), signed_sum_oracle(k.values(), signs, n));
  }
  EXPECT_THROW(signed_sum(GroupSubset::cyclic(5, {0}), {-1, 1}), std::invalid_argument);
  EXPECT_THROW(signed_sum(GroupSubset::cyclic(5, {0}), {1}), std::invalid_argument);
}

TEST(DiffTuples, SpecExamples) {
  EXPECT_EQ(diff_tuples(GroupSubset::full(3), 2).size(), 9u);
  EXPECT_EQ(diff_tuples(GroupSubset::cyclic(3, {0, 1}), 1).size(), 3u);
  const auto d2 = diff_tuples(GroupSubset::cyclic(3, {0, 1}), 2);
  EXPECT_LT(d2.size(), 9u);
  EXPECT_FALSE(d2.contains({1, 2}));
}

TEST(DiffTuples, MatchBruteForceAndFastCount) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 150; ++t) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 20);
    const auto a = GroupSubset::cyclic(n, oracle::subset(rng(), n));
    if (a.empty()) continue;
    const int k = 1 + t % 3;
    const auto d = diff_tuples(a, k);
    EXPECT_EQ(tuples_of(d), oracle::diff_tuples(a.values(), n, k));
    EXPECT_EQ(count_diff_tuples(a, k), d.size());
  }
}

TEST(Eq42, SpecExamples) {
  EXPECT_TRUE(eq42_holds(3, {0, 1}, 1).holds);
  const auto r = eq42_holds(3, {0, 1}, 2);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, (Element{1, 2}));
  EXPECT_TRUE(eq42_holds(4, {0, 1, 2}, 1).holds);
}

TEST(Eq42, AgreesWithBruteForceAndCountingBound) {
  for (std::int64_t n = 2; n <= 9; ++n)
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 3) {
      const auto a = oracle::subset(mask, n);
      for (int k = 1; k <= 3; ++k) {
        const auto r = eq42_holds(n, a, k);
        const auto d = oracle::diff_tuples(a, n, k);
        EXPECT_EQ(r.holds, d.size() == static_cast<std::size_t>(oracle::big_pow(static_cast<std::uint64_t>(n), k).get_ui()));
        if (r.holds) EXPECT_TRUE(r.counting_bound);
        if (r.witness) EXPECT_EQ(d.count(*r.witness), 0u);
      }
    }
  EXPECT_TRUE(eq42_holds(70, {0, 1, 2, 5, 9, 20, 33, 47, 60}, 1).holds == (oracle::diff_tuples({0, 1, 2, 5, 9, 20, 33, 47, 60}, 70, 1).size() == 70));
}

TEST(TupleInequality, SpecExamples) {
  const auto r = check_tuple_inequality(GroupSubset::cyclic(5, {0, 1}), GroupSubset::cyclic(5, {0}), 1);
  EXPECT_EQ(r.lhs_count, 3u);
  EXPECT_EQ(r.lhs, 3);
  EXPECT_EQ(r.rhs, 4);
  EXPECT_TRUE(r.holds);
  for (std::int64_t n = 2; n <= 9; ++n)
    for (int k = 1; k <= 3; ++k) {
      const auto full = check_tuple_inequality(GroupSubset::full(n), GroupSubset::full(n), k);
      EXPECT_TRUE(full.holds);
      EXPECT_EQ(full.lhs, full.rhs);
    }
}

TEST(TupleInequality, RandomSweepHasNoViolations) {
  const auto rep = sweep_random(false, 10'000, 64, 3, 2024, 2);
  EXPECT_EQ(rep.instances, 10'000u);
  EXPECT_TRUE(rep.violations.empty());
}

TEST(TupleInequality, LhsMatchesOracleCounts) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 100; ++t) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 14);
    const auto kv = oracle::subset(rng() | 1, n), sv = oracle::subset(rng() | 2, n);
    const int k = 1 + t % 3;
    const auto r = check_tuple_inequality(GroupSubset::cyclic(n, kv), GroupSubset::cyclic(n, sv), k);
    EXPECT_EQ(r.lhs_count, oracle::diff_tuples(kv, n, k).size());
    EXPECT_EQ(r.sum_count, oracle::sumset_mod(kv, sv, n).size());
    EXPECT_TRUE(r.holds);
  }
}

TEST(Plunnecke, SpecExamples) {
  const auto r = check_plunnecke(GroupSubset::cyclic(5, {0, 1}), GroupSubset::full(5), {1, -1});
  EXPECT_EQ(r.lhs, 15);
  EXPECT_EQ(r.rhs, 25);
  EXPECT_TRUE(r.holds);
  for (std::uint64_t mask = 1; mask < 64; ++mask) {
    const auto s = GroupSubset::cyclic(6, oracle::subset(mask, 6));
    EXPECT_TRUE(check_plunnecke(GroupSubset::cyclic(6, {0}), s, {1, 1, -1}).holds);
  }
}

TEST(Plunnecke, ExhaustiveSmallGroupsHaveNoViolations) {
  const auto rep = sweep_exhaustive(7, 2);
  EXPECT_EQ(rep.instances, 127u * 127u * 3u);
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_TRUE(sweep_exhaustive(6, 3).violations.empty());
  EXPECT_THROW(sweep_exhaustive(17, 2), std::invalid_argument);
}

TEST(Plunnecke, RandomSweepHasNoViolations) {
  EXPECT_TRUE(sweep_random(true, 5'000, 64, 4, 7).violations.empty());
}

TEST(Conjecture5, SpecExamples) {
  EXPECT_EQ(count_conj5_pairs(GroupSubset::cyclic(9, {0, 1})), 14u);
  const auto r = check_conjecture5(GroupSubset::cyclic(9, {0, 1}), GroupSubset::cyclic(9, {0}));
  EXPECT_EQ(r.lhs, 14);
  EXPECT_EQ(r.rhs, 32);
  for (std::int64_t n = 2; n <= 10; ++n) {
    const auto full = check_conjecture5(GroupSubset::full(n), GroupSubset::full(n));
    EXPECT_EQ(full.ratio(), 1);
  }
}

TEST(Conjecture5, PairCountMatchesBruteForce) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 80; ++t) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 80);
    std::vector<std::int64_t> k;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 6); ++i) k.push_back(static_cast<std::int64_t>(rng() % 200));
    const auto g = GroupSubset::cyclic(n, k);
    EXPECT_EQ(count_conj5_pairs(g), conj5_pairs_oracle(g.values(), n)) << n;
  }
}

TEST(Conjecture5, SearchIsDeterministicAndWorkerIndependent) {
  const auto a = search_conjecture5(2, 32, 2000, 7, 1);
  const auto b = search_conjecture5(2, 32, 2000, 7, 3);
  ASSERT_TRUE(a.max && b.max);
  EXPECT_EQ(a.max->trial, b.max->trial);
  EXPECT_EQ(serialize(a.max->instance), serialize(b.max->instance));
  EXPECT_EQ(a.violations.size(), b.violations.size());
  EXPECT_LE(a.max->check.ratio(), 1);
}

TEST(Instances, SerializeRoundTrip) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto inst = random_instance(99, t, 2, 40, 1, 4, t % 2 == 0);
    EXPECT_EQ(parse_instance(serialize(inst)), inst);
  }
  EXPECT_EQ(serialize(parse_instance("5;K=0,1;S=0;k=2;signs=+-")), "5;K=0,1;S=0;k=2;signs=+-");
  EXPECT_THROW(parse_instance("5;K=0,x"), ParseError);
  EXPECT_THROW(parse_instance("5;Q=1"), ParseError);
  EXPECT_THROW(parse_instance(""), ParseError);
}

TEST(Instances, RandomInstancesDependOnlyOnSeedAndTrial) {
  EXPECT_EQ(random_instance(5, 17, 2, 64, 1, 3, true), random_instance(5, 17, 2, 64, 1, 3, true));
  EXPECT_NE(serialize(random_instance(5, 17, 2, 64, 1, 3, true)), serialize(random_instance(6, 17, 2, 64, 1, 3, true)));
}

TEST(Caps, EnumerationLimitsAreReported) {
  std::vector<std::int64_t> big(400);
  for (std::int64_t i = 0; i < 400; ++i) big[static_cast<std::size_t>(i)] = i;
  EXPECT_THROW(diff_tuples(GroupSubset::cyclic(401, big), 3), ResourceCapError);
  EXPECT_THROW(eq42_holds(1000, {0, 1}, 3), ResourceCapError);
}
