#include "gcontract/fixed_points.hpp"
#include "gcontract/maps.hpp"

#include <gtest/gtest.h>

using namespace gcontract;

namespace {

PiecewiseMap worked_example() {
    return PiecewiseMap::create(Interval::all(), {{Interval::below(1, false), 2, 0, 0},
                                                  {Interval::closed(1, 4), Rational(1, 3), Rational(5, 3), 0},
                                                  {Interval::above(4, false), 2, -5, 0}});
}

}  // namespace

TEST(TableMap, EvaluatesAndRejectsForeignPoints) {
    TableMap t({1, 2, 0});
    EXPECT_EQ(t(0), 1u);
    EXPECT_THROW(t(3), DomainError);
    EXPECT_THROW(TableMap({0, 5}), InputError);
}

TEST(TableMap, OrbitsArePeriodic) {
    TableMap t({1, 2, 0, 3});
    auto o = orbit(t, 0);
    EXPECT_EQ(o.status, OrbitStatus::periodic);
    EXPECT_EQ(o.cycle_start, 0u);
    EXPECT_EQ(o.cycle_length, 3u);
    EXPECT_EQ(*o.at(7), 1u);
    auto f = orbit(t, 3);
    EXPECT_EQ(f.cycle_length, 1u);
}

TEST(PiecewiseMap, PiecesMustTileTheDomain) {
    EXPECT_THROW(PiecewiseMap::create(Interval::all(), {{Interval::below(1, false), 1, 0, 0}}), ConfigError);
    EXPECT_THROW(PiecewiseMap::create(Interval::all(),
                                      {{Interval::below(1, true), 1, 0, 0}, {Interval::above(1, true), 1, 0, 0}}),
                 ConfigError);
    EXPECT_NO_THROW(worked_example());
}

TEST(PiecewiseMap, ExactAndFastEvaluationAgree) {
    auto t = worked_example();
    EXPECT_EQ(t.evaluate_exact(4), Rational(3));
    EXPECT_EQ(t.evaluate_exact(Rational(1, 2)), Rational(1));
    EXPECT_DOUBLE_EQ(t(4.0), 3.0);
    EXPECT_DOUBLE_EQ(t(0.5), 1.0);
    EXPECT_DOUBLE_EQ(t(5.0), 5.0);
    for (double x = -3; x < 7; x += 0.37) EXPECT_NEAR(t(x), to_double(t.evaluate_exact(from_double(x))), 1e-12);
}

TEST(PiecewiseMap, OrbitStatuses) {
    auto t = worked_example();
    auto up = orbit(t, -1.0);
    EXPECT_EQ(up.status, OrbitStatus::diverged);
    auto fixed = orbit(t, 5.0);
    EXPECT_EQ(fixed.status, OrbitStatus::periodic);
    EXPECT_EQ(fixed.cycle_length, 1u);
    auto half = PiecewiseMap::create(Interval::all(), {{Interval::all(), Rational(1, 2), 0, 0}});
    auto slow = orbit(half, 1.0, {50, 1e12});
    EXPECT_EQ(slow.status, OrbitStatus::budget_exhausted);
    EXPECT_EQ(slow.values.size(), 51u);
}

TEST(FixedPoints, FiniteScan) { EXPECT_EQ(find_fixed_points(TableMap({0, 0, 2, 1})), (std::vector<std::size_t>{0, 2})); }

TEST(FixedPoints, AffinePiecesSolvedExactly) {
    auto fix = find_fixed_points(worked_example());
    EXPECT_EQ(fix.to_string(), "{0, 5/2, 5}");
    EXPECT_EQ(fix.count(), 3u);
    EXPECT_TRUE(fix.approximate.empty());
}

TEST(FixedPoints, IdentityPieceIsAContinuum) {
    auto t = PiecewiseMap::create(Interval::all(), {{Interval::below(0, false), 0, 0, 0}, {Interval::above(0, true), 1, 0, 0}});
    auto fix = find_fixed_points(t);
    EXPECT_FALSE(fix.count());
    EXPECT_EQ(fix.exact.to_string(), "[0,inf)");
}

TEST(FixedPoints, TranslationHasNone) {
    auto t = PiecewiseMap::create(Interval::all(), {{Interval::all(), 1, 1, 0}});
    EXPECT_TRUE(find_fixed_points(t).empty());
}

TEST(FixedPoints, QuadraticPieces) {
    // x^2/2 = x at 0 and 2; 0 is excluded from the piece
    auto t = PiecewiseMap::create(Interval::above(0, true),
                                  {{Interval::point(0), 0, 1, 0}, {Interval::above(0, false), 0, 0, Rational(1, 2)}});
    auto fix = find_fixed_points(t);
    EXPECT_EQ(fix.to_string(), "{2}");
    // x^2 - 1 = x has irrational roots, reported approximately
    auto g = PiecewiseMap::create(Interval::all(), {{Interval::all(), 0, -1, 1}});
    auto gf = find_fixed_points(g);
    ASSERT_EQ(gf.approximate.size(), 2u);
    EXPECT_NEAR(gf.approximate[1], (1 + std::sqrt(5.0)) / 2, 1e-12);
}

TEST(FixedPoints, RealXTSet) {
    RealSet region = subtract(RealSet(Interval::closed(1, 4)), RealSet(Interval::point(Rational(5, 2))));
    RealLineGraph g(RelationKind::order_leq, region);
    auto xt = x_t_set(g, worked_example(), {});
    EXPECT_EQ(xt.set.to_string(), "{0} U [1,5/2] U {5}");
    EXPECT_FALSE(xt.heuristic);
}
