#include "support.hpp"

#include "gcontract/oracle.hpp"

#include <gtest/gtest.h>

using namespace gcontract;
using namespace testing_support;

namespace {

FiniteInstance instance(std::string_view name) {
    auto p = bundled_finite(name);
    return {std::string(name), p.space, p.graph};
}

// Plain filter written without the library's stretch bookkeeping.
std::size_t direct_contraction_count(const FiniteInstance& inst) {
    const std::size_t n = inst.space.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= n;
    std::size_t count = 0;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::size_t> img(n);
        for (std::size_t i = 0, c = code; i < n; ++i, c /= n) img[n - 1 - i] = c % n;
        bool ok = true;
        double worst = 0;
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t y = 0; y < n && ok; ++y) {
                if (!inst.graph.has_edge(x, y)) continue;
                if (!inst.graph.has_edge(img[x], img[y])) ok = false;
                for (std::size_t k = 0; k < inst.space.member_count() && ok; ++k) {
                    const double d = inst.space.distance(k, x, y), e = inst.space.distance(k, img[x], img[y]);
                    if (d == 0 && e > 0) ok = false;
                    if (d > 0) worst = std::max(worst, e / d);
                }
            }
        if (ok && worst < 1) ++count;
    }
    return count;
}

}  // namespace

TEST(Enumeration, SinglePoint) {
    FiniteInstance inst{"one", table_space({{0}}), FiniteGraph::diagonal(1)};
    auto c = enumerate_contractions(inst);
    ASSERT_EQ(c.size(), 1u);
}

TEST(Enumeration, LoopsOnlyPairCountsAgainstDirectFilter) {
    FiniteInstance inst{"pair", table_space({{0, 1}, {1, 0}}), FiniteGraph::diagonal(2)};
    // every self-map: loops are preserved and there are no off-diagonal edges
    EXPECT_EQ(enumerate_contractions(inst).size(), 4u);
    EXPECT_EQ(direct_contraction_count(inst), 4u);
}

TEST(Enumeration, ChainCountMatchesDirectFilter) {
    auto inst = instance("chain-3-finite");
    EXPECT_EQ(enumerate_contractions(inst).size(), direct_contraction_count(inst));
}

TEST(Enumeration, LexicographicOrderAndBudget) {
    auto inst = instance("chain-3-finite");
    std::vector<std::vector<std::size_t>> seen;
    for_each_map(inst, {}, [&](std::size_t, const TableMap& t) { seen.push_back(t.image()); });
    ASSERT_EQ(seen.size(), 27u);
    EXPECT_EQ(seen.front(), (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_EQ(seen[1], (std::vector<std::size_t>{0, 0, 1}));
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EnumerationOptions tight;
    tight.max_carrier = 2;
    EXPECT_THROW(for_each_map(inst, tight, [](std::size_t, const TableMap&) {}), BudgetError);
}

TEST(ConnectivityEquivalence, ConnectedChain) {
    auto v = verify_connectivity_equivalence(instance("chain-3-finite"));
    EXPECT_TRUE(v.holds);
    EXPECT_TRUE(v.checks.at("weakly-connected"));
    EXPECT_TRUE(v.checks.at("orbits-cauchy-equivalent"));
    EXPECT_TRUE(v.checks.at("at-most-one-fixed-point"));
}

TEST(ConnectivityEquivalence, DisconnectedPairExhibitsTheMap) {
    auto v = verify_connectivity_equivalence(instance("two-component-finite"));
    EXPECT_TRUE(v.holds);
    EXPECT_FALSE(v.checks.at("weakly-connected"));
    EXPECT_FALSE(v.checks.at("at-most-one-fixed-point"));
    EXPECT_TRUE(v.checks.at("construction-is-contraction"));
    EXPECT_TRUE(v.checks.at("construction-alpha-star-zero"));
    EXPECT_TRUE(v.checks.at("construction-two-fixed-points"));
    ASSERT_FALSE(v.notes.empty());
    EXPECT_NE(v.notes.back().find("Fix = {a,b}"), std::string::npos);
}

TEST(ConnectivityEquivalence, NonSeparatedKeepsTheUniquenessDirection) {
    // a and b are indistinguishable and joined by no edge
    FiniteInstance inst{"ns", table_space({{0, 0}, {0, 0}}), FiniteGraph::diagonal(2)};
    auto v = verify_connectivity_equivalence(inst);
    EXPECT_TRUE(v.checks.at("unique-implies-connected"));
}

TEST(B2Reduction, PlantedViolation) {
    auto s = table_space({{0, Rational(4, 5), 1}, {Rational(4, 5), 0, Rational(9, 10)}, {1, Rational(9, 10), 0}});
    auto g = FiniteGraph::from_edges(3, {{0, 1}, {1, 2}});
    TableMap t({1, 2, 2});
    EXPECT_FALSE(satisfies_b2(s, g, t, 0.5));
    double refuting = 0;
    EXPECT_FALSE(b2_direct(s, g, t, 0.5, {0.85}, &refuting));
    EXPECT_DOUBLE_EQ(refuting, 0.85);
    // below rho(x,y) the premise is empty; above 1.8 the image fits
    EXPECT_TRUE(b2_direct(s, g, t, 0.5, {0.5, 1.9}, nullptr));
    auto v = verify_b2_reduction({"planted", s, g});
    EXPECT_TRUE(v.holds);
}

TEST(B2Reduction, ConstantMapsAcceptEverywhere) {
    auto inst = instance("two-pair-finite");
    auto radii = b2_radii(inst.space, 64, 0.5);
    for (std::size_t c = 0; c < 4; ++c) {
        auto t = TableMap::constant(4, c);
        for (double a : {0.1, 0.5, 0.9}) {
            EXPECT_TRUE(satisfies_b2(inst.space, inst.graph, t, a));
            EXPECT_TRUE(b2_direct(inst.space, inst.graph, t, a, radii, nullptr));
        }
    }
}

TEST(Cardinality, BundledInstances) {
    for (const auto& name : bundled_finite_names()) {
        auto v = verify_fixed_point_cardinality(instance(name));
        EXPECT_TRUE(v.holds) << name;
        for (const auto& [check, ok] : v.checks) EXPECT_TRUE(ok) << name << ": " << check;
    }
}

TEST(PathBound, SeededTrialsOnFourPoints) {
    auto v = verify_path_bound(instance("two-pair-finite"));
    EXPECT_TRUE(v.holds);
    PathBoundOptions other;
    other.seed = 7;
    EXPECT_TRUE(verify_path_bound(instance("complete-graph-G0"), other).holds);
}

TEST(Symmetry, ReverseAndClosureAndInvariance) {
    for (const auto& name : bundled_finite_names()) {
        EXPECT_TRUE(verify_edge_symmetry(instance(name)).holds) << name;
        EXPECT_TRUE(verify_component_invariance(instance(name)).holds) << name;
    }
}

TEST(Enumeration, FivePointsNeedTheRaisedCap) {
    auto s = FiniteSpace::create({labels(5), {}}, {{"d", {{0, 1, 2, 3, 4}, {1, 0, 1, 2, 3}, {2, 1, 0, 1, 2}, {3, 2, 1, 0, 1},
                                                         {4, 3, 2, 1, 0}}}});
    FiniteInstance inst{"five", s, FiniteGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})};
    EXPECT_THROW(enumerate_contractions(inst), BudgetError);
    EnumerationOptions wide;
    wide.max_carrier = 5;
    std::size_t maps = 0;
    for_each_map(inst, wide, [&](std::size_t, const TableMap&) { ++maps; });
    EXPECT_EQ(maps, 3125u);
    EXPECT_TRUE(verify_connectivity_equivalence(inst, wide).holds);
}
