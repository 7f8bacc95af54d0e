#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fracsum/cellgrid.hpp"
#include "fracsum/ifs.hpp"
#include "fracsum/sumset.hpp"
#include "oracles.hpp"

using namespace fracsum;
using oracle::q;

namespace {

std::set<std::int64_t> cells_of(const CellSet& s) { return oracle::cell_set(s); }

}  // namespace

TEST(Rational, ParsesExactFractionsOnly) {
  EXPECT_EQ(parse_rational("2/6"), q(1, 3));
  EXPECT_EQ(parse_rational("-3/4"), q(-3, 4));
  EXPECT_EQ(parse_rational("5"), q(5));
  EXPECT_THROW(parse_rational("0.25"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1e3"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_EQ(format_rational(q(4, 6)), "2/3");
}

TEST(Rational, MakeRationalCanonicalizes) {
  EXPECT_EQ(make_rational(2, 6), q(1, 3));
  EXPECT_EQ(make_rational(2, 6).get_den(), 3);
  EXPECT_EQ(make_rational(3, -9), q(-1, 3));
}

TEST(IntervalUnion, NormalizationMergesAbuttingAndIsIdempotent) {
  IntervalUnion u({{q(1), q(2)}, {q(0), q(1)}, {q(3), q(4)}, {q(7, 2), q(5)}});
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(u.intervals()[0], (Interval{q(0), q(2)}));
  EXPECT_EQ(u.intervals()[1], (Interval{q(3), q(5)}));
  IntervalUnion again(u.intervals());
  EXPECT_EQ(again.intervals(), u.intervals());
  EXPECT_EQ(u.measure(), q(4));
  EXPECT_THROW(IntervalUnion({{q(1), q(0)}}), std::invalid_argument);
}

TEST(IntervalUnion, RandomNormalizationIsIdempotentAndDisjoint) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto u = oracle::random_union(rng, 6, 6, -2, 2);
    IntervalUnion again(u.intervals());
    EXPECT_EQ(again.intervals(), u.intervals());
    for (std::size_t i = 1; i < u.size(); ++i) EXPECT_LT(u.intervals()[i - 1].hi, u.intervals()[i].lo);
  }
}

TEST(FromIntervals, SpecExamples) {
  const auto a = from_intervals(IntervalUnion::single(0, 1), 3, 1, CellMode::outer);
  EXPECT_EQ(cells_of(a), (std::set<std::int64_t>{0, 1, 2}));
  const auto b = from_intervals(IntervalUnion::single(0, q(1, 2)), 2, 1, CellMode::inner);
  EXPECT_EQ(cells_of(b), (std::set<std::int64_t>{0}));
  const IntervalUnion c({{q(0), q(1, 3)}, {q(2, 3), q(1)}});
  EXPECT_EQ(cells_of(from_intervals(c, 3, 2, CellMode::outer)), (std::set<std::int64_t>{0, 1, 2, 6, 7, 8}));
  EXPECT_TRUE(from_intervals(IntervalUnion(), 3, 2, CellMode::outer).empty());
}

TEST(FromIntervals, MatchesCellByCellOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 150; ++t) {
    const auto u = oracle::random_union(rng, 4, 12, -2, 2);
    const int base = 2 + static_cast<int>(t % 3);
    const int depth = 1 + static_cast<int>(t % 3);
    const Rational h = Rational(1) / Rational(ipow(BigInt(base), static_cast<unsigned long>(depth)));
    const std::int64_t range = 3 * static_cast<std::int64_t>(ipow(BigInt(base), static_cast<unsigned long>(depth)).get_si());
    EXPECT_EQ(cells_of(from_intervals(u, base, depth, CellMode::outer)), oracle::outer_cells(u, h, -range, range));
    EXPECT_EQ(cells_of(from_intervals(u, base, depth, CellMode::inner)), oracle::inner_cells(u, h, -range, range));
  }
}

TEST(FromIntervals, MeasureSandwichWithBoundedGap) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 150; ++t) {
    const auto u = oracle::random_union(rng, 5, 7, -1, 1);
    const int depth = 1 + static_cast<int>(t % 4);
    const auto outer = from_intervals(u, 3, depth, CellMode::outer);
    const auto inner = from_intervals(u, 3, depth, CellMode::inner);
    EXPECT_LE(inner.measure(), u.measure());
    EXPECT_LE(u.measure(), outer.measure());
    EXPECT_LE(outer.measure() - inner.measure(), Rational(2 * static_cast<long>(u.size())) * outer.cell_width());
  }
}

TEST(Dilate, SpecExamples) {
  const auto e = CellSet::from_cells(1, 3, 1, CellMode::outer, {{0, 0, 0}});
  EXPECT_EQ(cells_of(dilate(e, 1)), (std::set<std::int64_t>{-1, 0, 1}));
  const auto p = CellSet::from_cells(2, 3, 1, CellMode::outer, {{0, 0, 0}});
  EXPECT_EQ(dilate(p, 1).size(), 9u);
  const auto mt = CellSet::from_cells(1, 3, 2, CellMode::outer, {{0, 0, 0}, {2, 0, 0}, {6, 0, 0}, {8, 0, 0}});
  EXPECT_EQ(cells_of(dilate(mt, 1)), (std::set<std::int64_t>{-1, 0, 1, 2, 3, 5, 6, 7, 8, 9}));
}

TEST(Dilate, RadiiCompose) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    std::vector<Cell> cells;
    const int d = 1 + static_cast<int>(t % 3);
    for (int i = 0; i < 6; ++i)
      cells.push_back({static_cast<std::int64_t>(rng() % 20) - 10, static_cast<std::int64_t>(rng() % 20) - 10,
                       static_cast<std::int64_t>(rng() % 20) - 10});
    const auto e = CellSet::from_cells(d, 2, 3, CellMode::outer, cells);
    const std::int64_t a = static_cast<std::int64_t>(rng() % 3), b = static_cast<std::int64_t>(rng() % 3);
    EXPECT_EQ(dilate(e, a + b).cells(), dilate(dilate(e, a), b).cells());
  }
}

TEST(Measure, SpecExamples) {
  const auto four = CellSet::from_cells(1, 3, 2, CellMode::outer, {{0, 0, 0}, {2, 0, 0}, {6, 0, 0}, {8, 0, 0}});
  EXPECT_EQ(four.measure(), q(4, 9));
  EXPECT_EQ(CellSet(1, 3, 2, CellMode::outer).measure(), q(0));
  const auto cover = from_intervals(ifs::approximant(ifs::middle_thirds(), 4), 3, 4, CellMode::outer);
  EXPECT_EQ(cover.size(), 16u);
  EXPECT_EQ(cover.measure(), q(16, 81));
}

TEST(Refine, SpecExamplesAndMeasure) {
  const auto a = CellSet::from_cells(1, 2, 0, CellMode::outer, {{0, 0, 0}});
  EXPECT_EQ(cells_of(refine(a, 1)), (std::set<std::int64_t>{0, 1}));
  const auto b = CellSet::from_cells(1, 3, 1, CellMode::outer, {{1, 0, 0}});
  EXPECT_EQ(cells_of(refine(b, 2)), (std::set<std::int64_t>{3, 4, 5}));
  EXPECT_THROW(refine(b, 0), std::invalid_argument);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    std::vector<Cell> cells;
    const int d = 1 + static_cast<int>(t % 2);
    for (int i = 0; i < 5; ++i)
      cells.push_back({static_cast<std::int64_t>(rng() % 9) - 4, static_cast<std::int64_t>(rng() % 9) - 4, 0});
    const auto e = CellSet::from_cells(d, 3, 1, CellMode::inner, cells);
    const auto r = refine(e, 3);
    EXPECT_EQ(r.measure(), e.measure());
    EXPECT_EQ(r.mode(), CellMode::inner);
  }
}

TEST(Refine, OuterCoversStayAboveTruthAndInnerBelow) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 50; ++t) {
    const auto u = oracle::random_union(rng, 3, 5, 0, 2);
    const auto outer = refine(from_intervals(u, 2, 2, CellMode::outer), 5);
    const auto inner = refine(from_intervals(u, 2, 2, CellMode::inner), 5);
    for (const auto& c : from_intervals(u, 2, 5, CellMode::outer).cells()) EXPECT_TRUE(outer.contains(c));
    for (const auto& c : inner.cells()) EXPECT_TRUE(from_intervals(u, 2, 5, CellMode::inner).contains(c));
  }
}

TEST(CoversInterval, SpecExamples) {
  EXPECT_TRUE(covers_interval(IntervalUnion::single(0, 2), IntervalUnion({{q(0), q(1)}, {q(1), q(2)}})));
  EXPECT_FALSE(covers_interval(IntervalUnion::single(0, 1), IntervalUnion({{q(0), q(1, 3)}, {q(2, 3), q(1)}})));
  const auto k3 = ifs::approximant(ifs::middle_thirds(), 3);
  EXPECT_TRUE(covers_interval(IntervalUnion::single(0, 2), sumset::kfold_sum(k3, 2)));
}

TEST(TextFormat, IntervalRoundTrip) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto u = oracle::random_union(rng, 5, 9, -3, 3);
    EXPECT_EQ(intervals_from_text(to_text(u)).intervals(), u.intervals());
  }
  EXPECT_THROW(intervals_from_text("0 0.5\n"), ParseError);
}

TEST(TextFormat, CellSetRoundTrip) {
  for (int d = 1; d <= 3; ++d) {
    std::vector<Cell> cells{{-3, 2, 1}, {0, 0, 0}, {5, -1, 7}};
    const auto s = CellSet::from_cells(d, 5, 2, d == 2 ? CellMode::inner : CellMode::outer, cells);
    const auto back = cells_from_text(to_text(s));
    EXPECT_EQ(back.dim(), s.dim());
    EXPECT_EQ(back.base(), s.base());
    EXPECT_EQ(back.depth(), s.depth());
    EXPECT_EQ(back.mode(), s.mode());
    EXPECT_EQ(back.cells(), s.cells());
    EXPECT_EQ(to_text(back), to_text(s));
  }
}

TEST(FromBox, TwoDimensionalOuterAndInner) {
  const auto outer = from_box({q(0), q(0)}, {q(1, 2), q(1)}, 2, 2, CellMode::outer);
  EXPECT_EQ(outer.size(), 8u);
  const auto inner = from_box({q(1, 8), q(0)}, {q(3, 4), q(1, 4)}, 2, 2, CellMode::inner);
  EXPECT_EQ(inner.size(), 2u);
}
