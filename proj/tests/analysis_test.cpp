#include "support.hpp"

#include "gcontract/classify.hpp"
#include "gcontract/continuity.hpp"
#include "gcontract/contraction.hpp"
#include "gcontract/convergence.hpp"

#include <gtest/gtest.h>

using namespace gcontract;
using namespace testing_support;

// ---------------------------------------------------------------------------
// Contraction verdicts

TEST(Contraction, WorkedExampleOnTheOrderGraph) {
    auto p = bundled_real("paper-final-example");
    auto v = check_contraction(p.space, p.graph, p.map);
    EXPECT_TRUE(v.preserves_edges);
    EXPECT_TRUE(v.is_contraction);
    ASSERT_TRUE(v.alpha_star_exact);
    EXPECT_EQ(*v.alpha_star_exact, Rational(1, 3));
    EXPECT_FALSE(v.heuristic);
    EXPECT_DOUBLE_EQ(select_alpha(v, 1e-9, 0.5), 0.5);
    EXPECT_THROW(select_alpha(v, 1e-9, 0.2), PreconditionError);
}

TEST(Contraction, SampledStretchNeverExceedsExactAlphaStar) {
    auto p = bundled_real("paper-final-example");
    auto v = check_contraction(p.space, p.graph, p.map);
    double best = 0;
    for (double x = 1; x <= 4; x += 0.125)
        for (double y = x + 0.125; y <= 4; y += 0.125) {
            if (!p.graph.has_edge(x, y)) continue;
            best = std::max(best, std::fabs(p.map(x) - p.map(y)) / (y - x));
        }
    EXPECT_LE(best, v.alpha_star + 1e-12);
    EXPECT_NEAR(best, v.alpha_star, 1e-12);
}

TEST(Contraction, WholeLineGraphIsNotContracted) {
    auto p = bundled_real("paper-final-example");
    auto v = check_contraction(p.space, RealLineGraph(RelationKind::complete, RealSet::all()), p.map);
    EXPECT_FALSE(v.is_contraction);
    EXPECT_DOUBLE_EQ(v.alpha_star, 2.0);
    EXPECT_FALSE(v.witnesses().empty());
}

TEST(Contraction, DecreasingMapBreaksTheOrder) {
    auto space = RealLineSpace::create(Interval::all(), {}, {{"d", Rational(1)}});
    auto t = PiecewiseMap::create(Interval::all(), {{Interval::all(), Rational(-1, 2), 0, 0}});
    auto v = check_contraction(space, RealLineGraph(RelationKind::order_leq, RealSet::all()), t);
    EXPECT_FALSE(v.preserves_edges);
    EXPECT_FALSE(v.unpreserved_edge.empty());
    // comparability survives a decreasing map
    auto w = check_contraction(space, RealLineGraph(RelationKind::order_comparable, RealSet::all()), t);
    EXPECT_TRUE(w.is_contraction);
}

TEST(Contraction, BoundaryAlphaIsANearMiss) {
    auto space = RealLineSpace::create(Interval::all(), {}, {{"d", Rational(1)}});
    auto t = PiecewiseMap::create(Interval::all(), {{Interval::all(), 1, 3, 0}});
    auto v = check_contraction(space, RealLineGraph(RelationKind::complete, RealSet::all()), t);
    EXPECT_FALSE(v.is_contraction);
    EXPECT_TRUE(v.near_miss);
}

TEST(Contraction, FiniteAlphaStarAgainstDirectRatio) {
    auto p = bundled_finite("complete-graph-G0");
    auto v = check_contraction(p.space, p.graph, p.map);
    // stretch ratios: (q,p) 1/1 -> 0, (r,q) 1/2, (s,r) 2/4, (r,p) 1/3, (s,q) 3/6, (s,p) 3/7
    EXPECT_TRUE(v.is_contraction);
    EXPECT_DOUBLE_EQ(v.alpha_star, 0.5);
}

TEST(Contraction, TrivialGraphAnnotation) {
    auto s = table_space({{0, 1}, {1, 0}});
    auto v = check_contraction(s, FiniteGraph::diagonal(2), TableMap({1, 0}));
    EXPECT_TRUE(v.is_contraction);
    EXPECT_TRUE(v.trivial_graph);
    EXPECT_TRUE(v.alpha_star_vacuous);
    EXPECT_EQ(v.alpha_star, 0.0);
}

TEST(Contraction, ZeroDistanceEdgeMustStayAtZero) {
    auto s = table_space({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    auto g = FiniteGraph::from_edges(3, {{0, 1}});
    auto v = check_contraction(s, g, TableMap({0, 2, 2}));
    EXPECT_FALSE(v.preserves_edges && v.zero_edge_ok);
    EXPECT_FALSE(v.is_contraction);
}

TEST(Nonexpansive, FiniteAndReal) {
    auto s = table_space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    EXPECT_TRUE(check_nonexpansive(s, TableMap({0, 0, 1})).is_holds());
    EXPECT_TRUE(check_nonexpansive(s, TableMap({0, 2, 0})).is_violated());
    auto p = bundled_real("paper-final-example");
    auto n = check_nonexpansive(p.space, p.map);
    EXPECT_TRUE(n.is_violated());
    EXPECT_FALSE(n.witness.empty());
}

// ---------------------------------------------------------------------------
// Continuity taxonomy

TEST(Continuity, FirstExample) {
    auto p = bundled_real("orbital-continuity-ex1");
    auto prof = continuity_profile(p.space, p.graph, p.map, false);
    EXPECT_TRUE(prof.continuous.is_violated());
    EXPECT_EQ(prof.continuous.witness, "x_n = 1/n -> 0, T(x_n) -> 1 != T(0) = 0");
    EXPECT_TRUE(prof.orbitally_continuous.is_holds());
    EXPECT_TRUE(prof.orbitally_g_continuous.is_holds());
}

TEST(Continuity, SecondExample) {
    auto p = bundled_real("orbital-continuity-ex2");
    auto prof = continuity_profile(p.space, p.graph, p.map, false);
    EXPECT_TRUE(prof.continuous.is_violated());
    EXPECT_TRUE(prof.orbitally_continuous.is_violated());
    EXPECT_NE(prof.orbitally_continuous.witness.find("x=0, y=0, p_n=n"), std::string::npos);
    EXPECT_TRUE(prof.orbitally_g_continuous.is_holds());
    EXPECT_EQ(prof.orbitally_g_continuous.provenance, "trivial-graph-constant-subsequences");
}

TEST(Continuity, FiniteNonSeparatedClasses) {
    auto s = table_space({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    // a and b are indistinguishable, so mapping them far apart is discontinuous
    auto c = check_continuity(s, TableMap({0, 2, 2}));
    EXPECT_TRUE(c.is_violated());
    EXPECT_TRUE(check_continuity(s, TableMap({2, 2, 0})).is_holds());
    EXPECT_TRUE(check_continuity(table_space({{0, 1}, {1, 0}}), TableMap({1, 0})).is_holds());
}

TEST(PropertyStar, FiniteVariants) {
    auto sep = table_space({{0, 1}, {1, 0}});
    EXPECT_EQ(check_property_star(sep, FiniteGraph::diagonal(2)).provenance, "finite-auto");
    auto ns = table_space({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    EXPECT_TRUE(check_property_star(ns, FiniteGraph::diagonal(3)).is_violated());
    EXPECT_TRUE(check_property_star(ns, FiniteGraph::from_edges(3, {{0, 1}, {1, 0}})).is_holds());
}

TEST(PropertyStar, RealLineDeclaredAndFalsified) {
    auto p = bundled_real("order-corollary");
    EXPECT_TRUE(check_property_star(p.space, p.graph, p.map, true).is_holds());
    EXPECT_EQ(check_property_star(p.space, p.graph, p.map, false).value, Truth::not_determined);
}

// ---------------------------------------------------------------------------
// Convergence engine

TEST(Convergence, WorkedExampleOrbits) {
    auto p = bundled_real("paper-final-example");
    auto probes = probe_entourages(p.basis, 1e-6);
    ConvergenceWindow stop(p.space, probes, 16);
    auto from3 = orbit(p.map, 3.0, {}, stop);
    auto from4 = orbit(p.map, 4.0, {}, stop);
    auto down = orbit(p.map, -1.0, {}, stop);
    auto c3 = detect_cauchy(p.space, from3, probes, 16);
    ASSERT_TRUE(c3.cauchy);
    EXPECT_LE(c3.index, 40u);
    EXPECT_EQ(down.status, OrbitStatus::diverged);
    EXPECT_FALSE(detect_cauchy(p.space, down, probes, 16).cauchy);
    EXPECT_TRUE(cauchy_equivalent(p.space, from3, from4, probes, 16));
    EXPECT_FALSE(cauchy_equivalent(p.space, from3, down, probes, 16));
}

TEST(Convergence, CauchyIndexAgainstClosedForm) {
    // T^n(3) - 5/2 = (1/2) 3^-n, so the window [N, N+w] is inside V(|.|, r) once (1/2) 3^-N < r
    auto p = bundled_real("paper-final-example");
    const double r = 1e-6;
    std::vector<BasicEntourage> basis = {BasicEntourage::make(p.space, {{"d", r}})};
    auto o = orbit(p.map, 3.0, {200, 1e12});
    auto c = detect_cauchy(p.space, o, basis, 16);
    std::size_t expect = 0;
    while (0.5 * std::pow(3.0, -static_cast<double>(expect)) - 0.5 * std::pow(3.0, -static_cast<double>(expect + 16)) >= r)
        ++expect;
    ASSERT_TRUE(c.cauchy);
    EXPECT_EQ(c.index, expect);
}

TEST(Convergence, FiniteOrbitsAreExact) {
    auto s = table_space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    auto o = orbit(TableMap({0, 0, 1}), 2);
    auto c = detect_cauchy(s, o);
    EXPECT_TRUE(c.cauchy);
    EXPECT_EQ(c.index, 2u);
    auto cyc = orbit(TableMap({1, 0, 2}), 0);
    EXPECT_FALSE(detect_cauchy(s, cyc).cauchy);
    EXPECT_TRUE(cauchy_equivalent(s, o, orbit(TableMap({0, 0, 1}), 1)));
}

TEST(Convergence, PathBoundOnAChain) {
    auto p = bundled_finite("chain-3-finite");
    auto v = BasicEntourage::make(p.space, {{"d", 1.0}});
    Path path{{0, 1, 2}};
    auto r = path_weight_bound(p.space, p.graph, p.map, path, v, 1, 0.5);
    ASSERT_EQ(r.lambdas.size(), 2u);
    EXPECT_NEAR(r.r, r.lambdas[0] + r.lambdas[1], 1e-15);
    EXPECT_NEAR(r.r, 3.0, 1e-8);
    EXPECT_TRUE(r.member);
    EXPECT_THROW(path_weight_bound(p.space, p.graph, p.map, Path{{0, 2}}, v, 1, 0.5), InputError);
}

TEST(Convergence, GeometricTail) {
    EXPECT_NEAR(geometric_tail_bound(1.0 / 3, 2), 1.0, 1e-15);
    EXPECT_NEAR(geometric_partial_sum(1.0 / 3, 2, 60), geometric_tail_bound(1.0 / 3, 2), 1e-9);
    EXPECT_THROW(geometric_tail_bound(1.0, 2), PreconditionError);
}

// ---------------------------------------------------------------------------
// Classification

TEST(Classify, WorkedExample) {
    auto p = bundled_real("paper-final-example");
    auto v = check_contraction(p.space, p.graph, p.map);
    ProbeOptions po;
    po.starts = p.probes;
    OrbitalProbeOptions opo;
    opo.starts = p.probes;
    auto prof = continuity_profile(p.space, p.graph, p.map, false, opo);
    auto rep = classify(p.space, p.graph, p.map, v, prof, p.basis, po);
    EXPECT_EQ(rep.fixed_points, "{0, 5/2, 5}");
    EXPECT_TRUE(rep.picard.is_violated());
    EXPECT_EQ(rep.route, route_orbital);
    bool found = false;
    for (const auto& r : rep.restricted)
        if (r.component == "[1,4]\\{5/2}") {
            found = true;
            EXPECT_TRUE(r.picard.is_violated());
            EXPECT_EQ(r.limit, "5/2");
        }
    EXPECT_TRUE(found);
}

TEST(Classify, OrderCorollaryIsPicard) {
    auto p = bundled_real("order-corollary");
    auto v = check_contraction(p.space, p.graph, p.map);
    ASSERT_TRUE(v.is_contraction);
    ProbeOptions po;
    po.starts = p.probes;
    auto prof = continuity_profile(p.space, p.graph, p.map, true);
    auto rep = classify(p.space, p.graph, p.map, v, prof, p.basis, po);
    EXPECT_EQ(rep.route, route_property_star);
    EXPECT_TRUE(rep.picard.is_holds());
    EXPECT_EQ(rep.picard_limit, "2");
    EXPECT_TRUE(rep.weakly_picard.is_holds());
}

TEST(Classify, FiniteDisconnectedInstance) {
    auto p = bundled_finite("two-component-finite");
    auto ce = build_disconnection_counterexample(p.graph, 0, 1);
    auto v = check_contraction(p.space, p.graph, ce);
    ASSERT_TRUE(v.is_contraction);
    EXPECT_EQ(v.alpha_star, 0.0);
    auto rep = classify(p.space, p.graph, ce, v, continuity_profile(p.space, p.graph, ce));
    EXPECT_EQ(rep.fixed_point_count, 2u);
    EXPECT_TRUE(rep.picard.is_violated());
    EXPECT_TRUE(rep.weakly_picard.is_holds());
    EXPECT_EQ(rep.cardinality_check, true);
}

TEST(Classify, NonContractionCarriesDescriptiveFieldsOnly) {
    auto p = bundled_real("orbital-continuity-ex1");
    auto v = check_contraction(p.space, p.graph, p.map);
    ASSERT_FALSE(v.is_contraction);
    auto rep = classify(p.space, p.graph, p.map, v, continuity_profile(p.space, p.graph, p.map, false), p.basis);
    EXPECT_EQ(rep.route, route_none);
    EXPECT_EQ(rep.fixed_points, "{0, 1}");
}

TEST(Classify, EquicontinuityExtensionOnFiniteCarriers) {
    auto p = bundled_finite("chain-3-finite");
    std::vector<std::size_t> all = {0, 1, 2};
    EXPECT_TRUE(check_equicontinuity_extension(p.space, p.map, all, 0));
    EXPECT_FALSE(check_equicontinuity_extension(p.space, p.map, all, 1));
    EXPECT_THROW(check_equicontinuity_extension(p.space, p.map, {0, 1}, 0), PreconditionError);
}
