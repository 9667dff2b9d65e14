// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "support.hpp"

#include "gcontract/cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace gcontract;
using namespace testing_support;

namespace {

constexpr double worked_example_seconds = 1.0;
constexpr double enumeration_seconds = 10.0;
constexpr double tail_tolerance = 1e-9;
constexpr std::size_t cauchy_iterations = 40;
constexpr std::size_t path_trials = 200;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FiniteInstance instance(const std::string& name) {
    auto p = bundled_finite(name);
    return {name, p.space, p.graph};
}

Outcome worked_example() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    Options opt;
    opt.command = "report";
    opt.config_text = bundled_text("paper-final-example");
    const auto r = run(opt);
    const double dt = seconds_since(t0);
    const auto& c = r.report["classification"];
    o.require(c["fixed-points"] == "{0, 5/2, 5}", "fixed points");
    o.require(r.report["contraction"]["alpha-star-exact"] == "1/3", "alpha-star");
    o.require(r.report["orbits"][2]["head"][1] == 3.0, "T(4)");
    auto p = bundled_real("paper-final-example");
    o.require(component(p.graph, p.map.domain(), Rational(4)).to_string() == "[1,4]\\{5/2}", "component(4)");
    o.require(c["picard"]["value"] == "violated", "picard");
    o.require(dt < worked_example_seconds, "runtime");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(dt) + " s";
    return o;
}

Outcome connectivity_equivalence() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t instances = 0;
    for (const auto& name : bundled_finite_names()) {
        const auto inst = instance(name);
        if (inst.space.size() > 4) continue;
        ++instances;
        const auto v = verify_connectivity_equivalence(inst);
        o.require(v.holds, name);
        if (!is_weakly_connected(inst.graph)) {
            auto [x0, y0] = *disconnected_pair(inst.graph);
            const auto ce = build_disconnection_counterexample(inst.graph, x0, y0);
            const auto cv = check_contraction(inst.space, inst.graph, ce);
            o.require(cv.is_contraction && cv.alpha_star == 0, name + " counterexample contraction");
            o.require(find_fixed_points(ce).size() == 2, name + " counterexample fixed points");
        }
    }
    const double dt = seconds_since(t0);
    o.require(dt < enumeration_seconds, "runtime");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(instances) + " instances, " + std::to_string(dt) + " s";
    return o;
}

Outcome b2_reduction() {
    Outcome o;
    std::size_t checked = 0;
    B2Options b2;
    b2.grid = 64;
    for (const auto& name : bundled_finite_names()) {
        const auto inst = instance(name);
        if (inst.space.size() > 3) continue;
        ++checked;
        o.require(verify_b2_reduction(inst, b2).holds, name);
    }
    Gen g(20260101);
    for (int c = 0; c < 20; ++c) {
        const std::size_t n = 2 + g.below(2);
        FiniteInstance inst{"random", g.space(n, 1 + g.below(2), true), g.graph(n, 0.4)};
        ++checked;
        o.require(verify_b2_reduction(inst, b2).holds, "random instance " + std::to_string(c));
    }
    auto s = table_space({{0, Rational(4, 5), 1}, {Rational(4, 5), 0, Rational(9, 10)}, {1, Rational(9, 10), 0}});
    auto gr = FiniteGraph::from_edges(3, {{0, 1}, {1, 2}});
    TableMap planted({1, 2, 2});
    double refuting = 0;
    o.require(!satisfies_b2(s, gr, planted, 0.5), "pointwise accepts the planted map");
    o.require(!b2_direct(s, gr, planted, 0.5, {0.85}, &refuting) && refuting == 0.85, "r = 0.85 does not refute");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " instances";
    return o;
}

Outcome path_bound() {
    Outcome o;
    PathBoundOptions pb;
    pb.trials = path_trials;
    pb.max_power = 10;
    std::size_t instances = 0;
    for (const auto& name : bundled_finite_names()) {
        const auto inst = instance(name);
        if (inst.space.size() != 4) continue;
        ++instances;
        const auto v = verify_path_bound(inst, pb);
        o.require(v.holds, name);
    }
    o.require(instances > 0, "no four-point instance");
    const double tail = geometric_tail_bound(1.0 / 3, 2), partial = geometric_partial_sum(1.0 / 3, 2, 200);
    o.require(std::fabs(tail - partial) <= tail_tolerance, "geometric tail");
    return o;
}

Outcome cardinality() {
    Outcome o;
    for (const auto& name : bundled_finite_names()) {
        const auto v = verify_fixed_point_cardinality(instance(name));
        o.require(v.holds, name);
        for (const auto& [check, ok] : v.checks) o.require(ok, name + " " + check);
    }
    return o;
}

Outcome continuity_fixtures() {
    Outcome o;
    auto p1 = bundled_real("orbital-continuity-ex1");
    OrbitalProbeOptions opo;
    opo.starts = p1.probes;
    const auto a = continuity_profile(p1.space, p1.graph, p1.map, false, opo);
    o.require(a.orbitally_continuous.is_holds(), "ex1 orbital continuity");
    o.require(a.continuous.is_violated() && a.continuous.witness.find("1/n -> 0") != std::string::npos,
              "ex1 discontinuity witness");
    auto p2 = bundled_real("orbital-continuity-ex2");
    opo.starts = p2.probes;
    const auto b = continuity_profile(p2.space, p2.graph, p2.map, false, opo);
    o.require(b.orbitally_g_continuous.is_holds(), "ex2 orbital G-continuity");
    o.require(b.orbitally_continuous.is_violated() &&
                  b.orbitally_continuous.witness.find("x=0, y=0, p_n=n") != std::string::npos,
              "ex2 orbital discontinuity witness");
    return o;
}

Outcome convergence() {
    Outcome o;
    auto p = bundled_real("paper-final-example");
    const std::vector<BasicEntourage> basis = {BasicEntourage::make(p.space, {{"d", 1e-6}})};
    ConvergenceWindow stop(p.space, basis, 16);
    const auto o3 = orbit(p.map, 3.0, {}, stop), o4 = orbit(p.map, 4.0, {}, stop), down = orbit(p.map, -1.0, {}, stop);
    const auto c3 = detect_cauchy(p.space, o3, basis, 16);
    o.require(c3.cauchy && c3.index <= cauchy_iterations, "orbit from 3");
    o.require(down.status == OrbitStatus::diverged, "orbit from -1");
    o.require(cauchy_equivalent(p.space, o3, o4, basis, 16), "3 ~ 4");
    o.require(!cauchy_equivalent(p.space, o3, down, basis, 16), "3 !~ -1");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("N = ") + std::to_string(c3.index);
    return o;
}

Outcome invariance() {
    Outcome o;
    for (const auto& name : bundled_finite_names()) {
        o.require(verify_edge_symmetry(instance(name)).holds, name + " symmetry");
        o.require(verify_component_invariance(instance(name)).holds, name + " invariance");
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"worked-example classification", worked_example},
        {"connectivity equivalence on finite fixtures", connectivity_equivalence},
        {"pointwise B2 reduction", b2_reduction},
        {"path-weight bound", path_bound},
        {"fixed-point cardinality", cardinality},
        {"continuity taxonomy fixtures", continuity_fixtures},
        {"convergence engine", convergence},
        {"edge symmetry and component invariance", invariance},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        Outcome r;
        try {
            r = check();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failures += r.pass ? 0 : 1;
        std::printf("%s %d %s%s%s\n", r.pass ? "PASS" : "FAIL", ++index, name, r.detail.empty() ? "" : " -- ",
                    r.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
