#include "gcontract/graph.hpp"

#include <gtest/gtest.h>

using namespace gcontract;

namespace {

// 0 -> 1 <- 2, 3 isolated
FiniteGraph sample() { return FiniteGraph::from_edges(4, {{0, 1}, {2, 1}}); }

}  // namespace

TEST(FiniteGraph, LoopsAreInserted) {
    std::size_t added = 0;
    auto g = FiniteGraph::from_edges(3, {{0, 1}, {1, 1}}, &added);
    EXPECT_EQ(added, 2u);
    for (std::size_t x = 0; x < 3; ++x) EXPECT_TRUE(g.has_edge(x, x));
    EXPECT_TRUE(FiniteGraph::diagonal(3).trivial());
    EXPECT_FALSE(g.trivial());
}

TEST(FiniteGraph, OutOfRangeEdgeIsRejected) { EXPECT_THROW(FiniteGraph::from_edges(2, {{0, 2}}), InputError); }

TEST(FiniteGraph, ReverseAndClosure) {
    auto g = sample();
    auto r = g.reverse();
    EXPECT_TRUE(r.has_edge(1, 0));
    EXPECT_FALSE(r.has_edge(0, 1));
    auto u = g.undirected_closure();
    EXPECT_TRUE(u.symmetric());
    EXPECT_TRUE(u.has_edge(1, 2));
    EXPECT_EQ(u.undirected_closure().edges(), u.edges());
    EXPECT_EQ(g.reverse().reverse().edges(), g.edges());
}

TEST(FiniteGraph, ComponentsFollowUndirectedPaths) {
    auto u = sample().undirected_closure();
    EXPECT_EQ(component(u, 0), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(component(u, 3), (std::vector<std::size_t>{3}));
    EXPECT_FALSE(is_weakly_connected(sample()));
    EXPECT_TRUE(is_weakly_connected(FiniteGraph::from_edges(3, {{0, 1}, {2, 1}})));
    EXPECT_THROW(component(sample(), 0), PreconditionError);
}

TEST(FiniteGraph, FindPathIsShortestAndValid) {
    auto u = sample().undirected_closure();
    auto p = find_path(u, 0, 2);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->vertices, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_TRUE(is_path(u, *p));
    EXPECT_FALSE(find_path(u, 0, 3));
    EXPECT_EQ(find_path(u, 3, 3)->length(), 0u);
}

TEST(FiniteGraph, XTSet) {
    auto g = sample();
    // T: 0->1, 1->2, 2->2, 3->0
    TableMap t({1, 2, 2, 0});
    EXPECT_EQ(x_t_set(g, t), (std::vector<std::size_t>{0, 2}));
}

TEST(RealLineGraph, OrderOnPuncturedRegion) {
    RealSet region = subtract(RealSet(Interval::closed(1, 4)), RealSet(Interval::point(Rational(5, 2))));
    RealLineGraph g(RelationKind::order_leq, region);
    EXPECT_TRUE(g.has_edge(Rational(1), Rational(3)));
    EXPECT_FALSE(g.has_edge(Rational(3), Rational(1)));
    EXPECT_FALSE(g.has_edge(Rational(1), Rational(5, 2)));
    EXPECT_TRUE(g.has_edge(Rational(5, 2), Rational(5, 2)));
    EXPECT_TRUE(g.has_edge(Rational(-7), Rational(-7)));
    EXPECT_FALSE(g.has_edge(Rational(0), Rational(1)));
    EXPECT_TRUE(g.reverse().has_edge(Rational(3), Rational(1)));
    EXPECT_TRUE(g.undirected_closure().symmetric());
}

TEST(RealLineGraph, ComponentsOfThePuncturedOrder) {
    RealSet region = subtract(RealSet(Interval::closed(1, 4)), RealSet(Interval::point(Rational(5, 2))));
    RealLineGraph g(RelationKind::order_leq, region);
    const Interval line = Interval::all();
    EXPECT_EQ(component(g, line, Rational(4)).to_string(), "[1,4]\\{5/2}");
    EXPECT_EQ(component(g, line, Rational(5, 2)).to_string(), "{5/2}");
    EXPECT_EQ(component(g, line, Rational(0)).to_string(), "{0}");
    EXPECT_FALSE(is_weakly_connected(g, line));
    EXPECT_TRUE(is_weakly_connected(RealLineGraph(RelationKind::order_leq, RealSet::all()), line));
}
