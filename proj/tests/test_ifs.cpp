#include <gtest/gtest.h>

#include <random>

#include "fracsum/ifs.hpp"
#include "oracles.hpp"

using namespace fracsum;
using oracle::q;

TEST(HullInterior, SpecExamples) {
  EXPECT_TRUE(ifs::hull_has_interior({{q(0)}, {q(2, 3)}}, 1));
  EXPECT_FALSE(ifs::hull_has_interior({{q(0), q(0)}, {q(1), q(0)}, {q(2), q(0)}}, 2));
  EXPECT_TRUE(ifs::hull_has_interior({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, 2));
  EXPECT_FALSE(ifs::hull_has_interior({{q(1, 2)}}, 1));
}

TEST(HullInterior, InvariantUnderTranslationAndPermutation) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + static_cast<int>(t % 3);
    std::vector<ifs::Vec> b;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < count; ++j) {
      ifs::Vec v;
      for (int i = 0; i < d; ++i) v.push_back(q(static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 2)));
      b.push_back(v);
    }
    const bool base = ifs::hull_has_interior(b, d);
    auto shifted = b;
    for (auto& v : shifted)
      for (auto& x : v) x += q(7, 5);
    EXPECT_EQ(ifs::hull_has_interior(shifted, d), base);
    auto perm = b;
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(ifs::hull_has_interior(perm, d), base);
  }
}

TEST(MinK, SpecExamples) {
  EXPECT_EQ(ifs::min_k_thm1(1, q(1, 3)), 2);
  EXPECT_EQ(ifs::min_k_thm1(2, q(1, 2)), 3);
  EXPECT_EQ(ifs::min_k_thm1(1, q(2, 5)), 2);
  EXPECT_EQ(ifs::min_k_prop1(q(1, 3)), 2);
  EXPECT_EQ(ifs::min_k_prop1(q(1, 4)), 3);
  EXPECT_EQ(ifs::min_k_prop1(q(2, 5)), 2);
  EXPECT_THROW(ifs::min_k_prop1(q(1, 2)), HypothesisError);
  EXPECT_THROW(ifs::min_k_prop1(q(0)), HypothesisError);
}

TEST(MinK, BothRulesAgreeAndAreMinimal) {
  for (long den = 3; den <= 40; ++den)
    for (long num = 1; 2 * num < den; ++num) {
      const Rational a = q(num, den);
      const long k = ifs::min_k_prop1(a);
      EXPECT_EQ(k, ifs::min_k_thm1(1, a)) << to_string(a);
      EXPECT_GE(Rational(k + 1) * a, 1);
      EXPECT_LT(Rational(k) * a, 1);
    }
}

TEST(R2Hypotheses, SpecExamples) {
  EXPECT_TRUE(ifs::check_r2_hypotheses(3, q(9, 40)));
  EXPECT_FALSE(ifs::check_r2_hypotheses(3, q(1, 4)));
  EXPECT_FALSE(ifs::check_r2_hypotheses(2, q(1, 5)));
  EXPECT_TRUE(ifs::check_r2_hypotheses(3, q(2, 9)));
  EXPECT_FALSE(ifs::check_r2_hypotheses(3, q(2, 10)));
  EXPECT_TRUE(ifs::check_r2_hypotheses(4, q(1, 6)));
}

TEST(Build, SpecExamples) {
  const auto mt = ifs::build(ifs::DigitCantor{3, {0, 2}});
  ASSERT_EQ(mt.map_count(), 2u);
  EXPECT_EQ(mt.ratio(), q(1, 3));
  EXPECT_EQ(mt.maps()[1].b[0], q(2, 3));
  const auto hc = ifs::build(ifs::HomogeneousCantor{q(1, 3)});
  EXPECT_EQ(hc.translations(), mt.translations());
  EXPECT_EQ(hc.ratio(), mt.ratio());
  const auto r2 = ifs::build(ifs::R2Family{3, q(9, 40)});
  ASSERT_EQ(r2.map_count(), 4u);
  for (int j = 0; j <= 3; ++j) EXPECT_EQ(r2.maps()[static_cast<std::size_t>(j)].b[0], q(j));
  EXPECT_THROW(ifs::build(ifs::HomogeneousCantor{q(1, 2)}), HypothesisError);
  EXPECT_THROW(ifs::build(ifs::DigitCantor{3, {0, 3}}), HypothesisError);
  EXPECT_THROW(ifs::build(ifs::R2Family{3, q(3, 2)}), HypothesisError);
}

TEST(Build, RejectsMixedRatiosAndRotations) {
  EXPECT_THROW(ifs::IFSystem(1, {{q(1, 3), {q(0)}}, {q(1, 4), {q(1)}}}), HypothesisError);
  EXPECT_THROW(ifs::IFSystem(1, {{q(1, 3), {q(0)}, false}, {q(1, 3), {q(1)}}}), HypothesisError);
}

TEST(InitialSet, SpecExamples) {
  EXPECT_EQ(ifs::initial_set(ifs::middle_thirds()).intervals().front(), (Interval{q(-1), q(1)}));
  EXPECT_EQ(ifs::initial_radius(ifs::build(ifs::R2Family{3, q(9, 40)})), q(120, 31));
}

TEST(InitialSet, InvariantForRandomSystems) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const Rational r = q(1 + static_cast<long>(rng() % 8), 9);
    std::vector<ifs::Similarity> maps;
    const int count = 2 + static_cast<int>(rng() % 3);
    for (int j = 0; j < count; ++j) maps.push_back({r, {q(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4))}});
    const ifs::IFSystem sys(1, maps);
    EXPECT_TRUE(ifs::is_invariant(sys, ifs::initial_set(sys)));
    EXPECT_TRUE(ifs::is_invariant(sys, ifs::natural_initial_set(sys)));
  }
}

TEST(Iterate, SpecExamples) {
  const auto mt = ifs::middle_thirds();
  const auto one = ifs::iterate(mt, IntervalUnion::single(0, 1));
  EXPECT_EQ(one.intervals(), (std::vector<Interval>{{q(0), q(1, 3)}, {q(2, 3), q(1)}}));
  const auto two = ifs::iterate(mt, one);
  ASSERT_EQ(two.size(), 4u);
  for (const auto& iv : two.intervals()) EXPECT_EQ(iv.length(), q(1, 9));
  IntervalUnion k = IntervalUnion::single(0, 1);
  for (int m = 0; m <= 10; ++m) {
    EXPECT_EQ(k.measure(), oracle::pow_q(q(2, 3), m));
    k = ifs::iterate(mt, k);
  }
}

TEST(Approximant, MatchesDigitPrefixOracle) {
  const std::vector<std::pair<int, std::vector<int>>> families{{3, {0, 2}}, {3, {0, 1}}, {4, {0, 3}}, {5, {0, 2, 4}}, {4, {0, 1, 2}}};
  for (const auto& [n, a] : families)
    for (int m = 0; m <= 6; ++m)
      EXPECT_EQ(ifs::approximant(ifs::build(ifs::DigitCantor{n, a}), m).intervals(),
                oracle::digit_prefixes(n, a, m).intervals())
          << n << " m=" << m;
  const auto two = ifs::approximant(ifs::build(ifs::DigitCantor{3, {0, 1}}), 2);
  EXPECT_EQ(two.intervals(), (std::vector<Interval>{{q(0), q(2, 9)}, {q(1, 3), q(5, 9)}}));
}

TEST(Approximant, NestedOnEveryBuiltInFamily) {
  const std::vector<ifs::Label> labels{ifs::DigitCantor{3, {0, 2}}, ifs::DigitCantor{4, {0, 3}},
                                       ifs::HomogeneousCantor{q(2, 5)}, ifs::R2Family{3, q(9, 40)},
                                       ifs::R2Family{4, q(1, 6)}};
  for (const auto& l : labels) {
    const auto sys = ifs::build(l);
    IntervalUnion prev = ifs::approximant(sys, 0);
    for (int m = 1; m <= 8; ++m) {
      const auto cur = ifs::iterate(sys, prev);
      EXPECT_TRUE(prev.contains(cur)) << ifs::describe(l) << " m=" << m;
      prev = cur;
    }
  }
}

TEST(Approximant, CapIsReportedDistinctly) {
  const auto sys = ifs::build(ifs::R2Family{3, q(9, 40)});
  EXPECT_THROW(ifs::approximant(sys, 6, 1000), ResourceCapError);
  EXPECT_THROW(ifs::approximant(sys, 2, IntervalUnion::single(0, 1)), HypothesisError);
}

TEST(Approximant, CellVersionCoversIntervalVersion) {
  const auto sys = ifs::middle_thirds();
  for (int m = 0; m <= 4; ++m) {
    const auto cells = ifs::cell_approximant(sys, m, 3, 5);
    const auto truth = from_intervals(ifs::approximant(sys, m, ifs::initial_set(sys)), 3, 5, CellMode::outer);
    for (const auto& c : truth.cells()) EXPECT_TRUE(cells.contains(c));
  }
}

TEST(Approximant, TwoDimensionalBoxes) {
  const ifs::IFSystem gasket(2, {{q(1, 2), {q(0), q(0)}}, {q(1, 2), {q(1, 2), q(0)}}, {q(1, 2), {q(0), q(1, 2)}}});
  const auto k3 = ifs::box_approximant(gasket, 3, ifs::hull_box(gasket));
  EXPECT_EQ(k3.size(), 27u);
  EXPECT_EQ(ifs::rank({{q(1), q(2)}, {q(2), q(4)}}), 1);
}
