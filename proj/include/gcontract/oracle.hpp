#pragma once

// Brute-force validation on small finite instances: every self-map is
// enumerated and the equivalences are checked against the analysis module.

#include "gcontract/classify.hpp"
#include "gcontract/continuity.hpp"
#include "gcontract/contraction.hpp"
#include "gcontract/convergence.hpp"
#include "gcontract/errors.hpp"
#include "gcontract/graph.hpp"
#include "gcontract/maps.hpp"
#include "gcontract/space.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gcontract {

struct FiniteInstance {
    std::string name;
    FiniteSpace space;
    FiniteGraph graph;
};

struct EnumerationOptions {
    std::size_t max_carrier = 4;
    std::size_t max_maps = 3125;
};

struct Counterexample {
    std::size_t map_index = 0;
    TableMap map;
    std::string details;
};

struct TheoremVerdict {
    std::string theorem;
    bool holds = true;
    std::optional<Counterexample> counterexample;
    std::size_t maps_enumerated = 0;
    std::size_t contractions_found = 0;
    std::map<std::string, bool> checks;  // named sub-results
    std::vector<std::string> notes;
};

/// Maps in lexicographic order of (T(0), T(1), ...).
template <class Visit>
std::size_t for_each_map(const FiniteInstance& inst, const EnumerationOptions& options, Visit visit) {
    const std::size_t n = inst.space.size();
    if (n > options.max_carrier)
        throw BudgetError("carrier of size " + std::to_string(n) + " exceeds the cap " +
                          std::to_string(options.max_carrier));
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= n;
        if (total > options.max_maps)
            throw BudgetError("enumeration of " + std::to_string(n) + "^" + std::to_string(n) +
                              " maps exceeds the budget of " + std::to_string(options.max_maps));
    }
    std::vector<std::size_t> image(n, 0);
    for (std::size_t index = 0; index < total; ++index) {
        std::size_t k = index;
        for (std::size_t i = n; i-- > 0;) {
            image[i] = k % n;
            k /= n;
        }
        visit(index, TableMap(image));
    }
    return total;
}

struct EnumeratedContraction {
    std::size_t index = 0;
    TableMap map;
    ContractionVerdict verdict;
};

inline std::vector<EnumeratedContraction> enumerate_contractions(const FiniteInstance& inst,
                                                                 const EnumerationOptions& options = {}) {
    std::vector<EnumeratedContraction> out;
    for_each_map(inst, options, [&](std::size_t index, const TableMap& map) {
        auto v = check_contraction(inst.space, inst.graph, map);
        if (v.is_contraction) out.push_back({index, map, std::move(v)});
    });
    return out;
}

inline std::string describe_map(const FiniteSpace& space, const TableMap& map) {
    std::string out;
    for (std::size_t x = 0; x < map.size(); ++x) {
        if (x) out += ", ";
        out += space.label(x) + "->" + space.label(map(x));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weak connectivity <=> Cauchy equivalence of all orbit pairs <=> at most one
// fixed point, for every contraction.

inline TheoremVerdict verify_connectivity_equivalence(const FiniteInstance& inst, const EnumerationOptions& options = {}) {
    TheoremVerdict tv;
    tv.theorem = "connectivity-equivalence";
    const auto& space = inst.space;
    const bool connected = is_weakly_connected(inst.graph);
    bool all_equivalent = true;
    bool at_most_one = true;
    std::optional<Counterexample> first_equiv, first_many;

    tv.maps_enumerated = for_each_map(inst, options, [&](std::size_t index, const TableMap& map) {
        const auto v = check_contraction(space, inst.graph, map);
        if (!v.is_contraction) return;
        ++tv.contractions_found;
        const auto orbits = finite_orbits(space, map);
        for (std::size_t x = 0; x < space.size() && !first_equiv; ++x)
            for (std::size_t y = 0; y < space.size(); ++y)
                if (!cauchy_equivalent(space, orbits[x].orbit, orbits[y].orbit)) {
                    all_equivalent = false;
                    first_equiv = Counterexample{index, map,
                                                 "orbits from " + space.label(x) + " and " + space.label(y) +
                                                     " are not Cauchy equivalent"};
                    break;
                }
        const auto fix = find_fixed_points(map);
        if (fix.size() > 1) {
            at_most_one = false;
            if (!first_many)
                first_many = Counterexample{index, map, std::to_string(fix.size()) + " fixed points"};
        }
    });

    tv.checks["weakly-connected"] = connected;
    tv.checks["orbits-cauchy-equivalent"] = all_equivalent;
    tv.checks["at-most-one-fixed-point"] = at_most_one;
    tv.checks["connected-implies-equivalent"] = !connected || all_equivalent;
    tv.checks["equivalent-implies-unique"] = !all_equivalent || at_most_one;
    tv.checks["unique-implies-connected"] = !at_most_one || connected;
    tv.holds = tv.checks["connected-implies-equivalent"] && tv.checks["equivalent-implies-unique"] &&
               tv.checks["unique-implies-connected"];

    if (!connected) {
        auto [x0, y0] = *disconnected_pair(inst.graph);
        const TableMap ce = build_disconnection_counterexample(inst.graph, x0, y0);
        const auto v = check_contraction(space, inst.graph, ce);
        const auto fix = find_fixed_points(ce);
        const auto oc = check_orbital_continuity(space, ce);
        tv.checks["construction-is-contraction"] = v.is_contraction;
        tv.checks["construction-alpha-star-zero"] = v.alpha_star == 0;
        tv.checks["construction-two-fixed-points"] = fix.size() == 2;
        tv.checks["construction-orbitally-continuous"] = oc.is_holds();
        tv.holds = tv.holds && v.is_contraction && v.alpha_star == 0 && fix.size() == 2 && oc.is_holds();
        tv.notes.push_back("disconnection map: " + describe_map(space, ce) + "; Fix = " +
                           detail::set_string(space, fix));
    }
    if (!tv.holds) tv.counterexample = first_many ? first_many : first_equiv;
    return tv;
}

// ---------------------------------------------------------------------------
// The pointwise weight-decrease criterion against the entourage-quantified
// definition, radius by radius.

struct B2Options {
    std::size_t grid = 64;  // K
    std::vector<double> alphas;  // default: k/16, k = 1..15
};

/// Direct check: for every edge, member and radius r, rho(x,y) < r implies
/// rho(Tx,Ty) < alpha * r.
inline bool b2_direct(const FiniteSpace& space, const FiniteGraph& graph, const TableMap& map, double alpha,
                      const std::vector<double>& radii, double* refuting_radius = nullptr) {
    for (auto [x, y] : graph.edges())
        for (std::size_t k = 0; k < space.member_count(); ++k)
            for (double r : radii) {
                const BasicEntourage v = BasicEntourage::from_terms({{k, r}});
                if (contains(space, v, x, y) && !contains(space, scale(v, alpha), map(x), map(y))) {
                    if (refuting_radius) *refuting_radius = r;
                    return false;
                }
            }
    return true;
}

inline std::vector<double> b2_radii(const FiniteSpace& space, std::size_t grid, double alpha) {
    std::vector<double> radii;
    const double top = 2 * space.diameter();
    if (top > 0)
        for (std::size_t j = 1; j <= grid; ++j) radii.push_back(top * static_cast<double>(j) / static_cast<double>(grid));
    for (std::size_t k = 0; k < space.member_count(); ++k)
        for (std::size_t x = 0; x < space.size(); ++x)
            for (std::size_t y = x + 1; y < space.size(); ++y) {
                const double d = space.distance(k, x, y);
                if (d <= 0) continue;
                radii.push_back(d * (1 - 1e-9));
                radii.push_back(d * (1 + 1e-9));
                radii.push_back(d / alpha);
            }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

inline TheoremVerdict verify_b2_reduction(const FiniteInstance& inst, const B2Options& b2 = {},
                                          const EnumerationOptions& options = {}) {
    TheoremVerdict tv;
    tv.theorem = "b2-reduction";
    std::vector<double> alphas = b2.alphas;
    if (alphas.empty())
        for (int k = 1; k < 16; ++k) alphas.push_back(k / 16.0);
    std::size_t disagreements = 0, rejections = 0;
    tv.maps_enumerated = for_each_map(inst, options, [&](std::size_t index, const TableMap& map) {
        if (check_contraction(inst.space, inst.graph, map).is_contraction) ++tv.contractions_found;
        for (double alpha : alphas) {
            const bool pointwise = satisfies_b2(inst.space, inst.graph, map, alpha);
            const bool direct = b2_direct(inst.space, inst.graph, map, alpha, b2_radii(inst.space, b2.grid, alpha));
            if (!pointwise) ++rejections;
            if (pointwise != direct) {
                ++disagreements;
                if (!tv.counterexample)
                    tv.counterexample = Counterexample{index, map,
                                                       "alpha " + format_double(alpha) + ": pointwise " +
                                                           (pointwise ? "accepts" : "rejects") + ", direct " +
                                                           (direct ? "accepts" : "rejects")};
            }
        }
    });
    tv.holds = disagreements == 0;
    tv.checks["zero-disagreements"] = tv.holds;
    tv.notes.push_back(std::to_string(disagreements) + " disagreements, " + std::to_string(rejections) +
                       " (map, alpha) pairs rejected by both");
    return tv;
}

// ---------------------------------------------------------------------------
// Fixed points against the components meeting X_T, plus the companion
// assertions, all from exhaustive orbits.

inline TheoremVerdict verify_fixed_point_cardinality(const FiniteInstance& inst, const EnumerationOptions& options = {}) {
    TheoremVerdict tv;
    tv.theorem = "fixed-point-cardinality";
    const auto& space = inst.space;
    const auto ids = component_ids(inst.graph);
    const bool connected = is_weakly_connected(inst.graph);
    const char* names[] = {"cardinality",       "restricted-picard", "connected-picard", "existence",
                           "uniqueness",        "weak-picard-on-union", "weak-picard-when-all"};
    for (const char* n : names) tv.checks[n] = true;

    auto fail = [&](const char* check, std::size_t index, const TableMap& map, const std::string& why) {
        tv.checks[check] = false;
        if (!tv.counterexample) tv.counterexample = Counterexample{index, map, std::string(check) + ": " + why};
    };

    tv.maps_enumerated = for_each_map(inst, options, [&](std::size_t index, const TableMap& map) {
        const auto v = check_contraction(space, inst.graph, map);
        if (!v.is_contraction) return;
        ++tv.contractions_found;
        const auto fix = find_fixed_points(map);
        const auto xt = x_t_set(inst.graph, map);
        const auto orbits = finite_orbits(space, map);
        std::vector<std::size_t> meeting;
        for (std::size_t x : xt)
            if (std::find(meeting.begin(), meeting.end(), ids[x]) == meeting.end()) meeting.push_back(ids[x]);

        if (fix.size() != meeting.size())
            fail("cardinality", index, map,
                 std::to_string(fix.size()) + " fixed points, " + std::to_string(meeting.size()) + " components");

        for (std::size_t id : meeting) {
            std::vector<std::size_t> in;
            for (std::size_t f : fix)
                if (ids[f] == id) in.push_back(f);
            bool ok = in.size() == 1;
            for (std::size_t y = 0; ok && y < space.size(); ++y)
                if (ids[y] == id) ok = orbits[y].limit_fixed_point && *orbits[y].limit_fixed_point == in.front();
            if (!ok) fail("restricted-picard", index, map, "component of a point of X_T");
        }

        bool picard = fix.size() == 1;
        for (const auto& s : orbits) picard = picard && s.limit_fixed_point && *s.limit_fixed_point == fix.front();
        if (!xt.empty() && connected && !picard) fail("connected-picard", index, map, "not a Picard operator");

        if (fix.empty() != xt.empty()) fail("existence", index, map, "Fix and X_T disagree on emptiness");

        bool inside_one = false;
        for (std::size_t x : xt) {
            bool all = true;
            for (std::size_t y : xt) all = all && ids[y] == ids[x];
            inside_one = inside_one || all;
        }
        if ((fix.size() == 1) != inside_one) fail("uniqueness", index, map, "unique fixed point vs X_T in one component");

        for (std::size_t y = 0; y < space.size(); ++y)
            if (std::find(meeting.begin(), meeting.end(), ids[y]) != meeting.end() && !orbits[y].limit_fixed_point)
                fail("weak-picard-on-union", index, map, "orbit from " + space.label(y));

        if (xt.size() == space.size())
            for (const auto& s : orbits)
                if (!s.limit_fixed_point) fail("weak-picard-when-all", index, map, "orbit from " + space.label(s.start));
    });
    tv.holds = std::all_of(tv.checks.begin(), tv.checks.end(), [](const auto& kv) { return kv.second; });
    return tv;
}

// ---------------------------------------------------------------------------
// Path-weight bound on random contractions, connected pairs, entourages and n.

struct PathBoundOptions {
    std::size_t trials = 200;
    std::uint64_t seed = 20260101;
    std::size_t max_power = 10;
    double slack = 1e-9;
};

inline TheoremVerdict verify_path_bound(const FiniteInstance& inst, const PathBoundOptions& pb = {},
                                        const EnumerationOptions& options = {}) {
    TheoremVerdict tv;
    tv.theorem = "path-bound";
    const auto contractions = enumerate_contractions(inst, options);
    tv.contractions_found = contractions.size();
    for_each_map(inst, options, [&](std::size_t, const TableMap&) { ++tv.maps_enumerated; });
    if (contractions.empty()) throw PreconditionError("path bound needs at least one contraction");
    const auto& space = inst.space;
    const FiniteGraph closure = inst.graph.undirected_closure();
    const auto ids = component_ids(inst.graph);
    const double diameter = std::max(space.diameter(), 1.0);

    std::mt19937_64 rng(pb.seed);
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    std::uniform_real_distribution<double> radius(0.05 * diameter, 2 * diameter);
    std::size_t failures = 0;
    for (std::size_t t = 0; t < pb.trials; ++t) {
        const auto& c = contractions[pick(contractions.size())];
        const std::size_t x = pick(space.size());
        std::vector<std::size_t> same;
        for (std::size_t y = 0; y < space.size(); ++y)
            if (ids[y] == ids[x]) same.push_back(y);
        const std::size_t y = same[pick(same.size())];
        const Path path = *find_path(closure, x, y);
        std::vector<EntourageTerm> terms;
        for (std::size_t k = 0; k < space.member_count(); ++k)
            if (k == 0 || pick(2) == 0) terms.push_back({k, radius(rng)});
        const BasicEntourage v = BasicEntourage::from_terms(std::move(terms));
        const std::size_t n = 1 + pick(pb.max_power);
        const double alpha = select_alpha(c.verdict, pb.slack);
        const PathBound b = path_weight_bound(space, inst.graph, c.map, path, v, n, alpha, pb.slack);
        if (!b.member) {
            ++failures;
            if (!tv.counterexample)
                tv.counterexample = Counterexample{c.index, c.map,
                                                   "path " + space.label(x) + ".." + space.label(y) + ", n=" +
                                                       std::to_string(n) + ", " + v.describe(space)};
        }
    }
    tv.holds = failures == 0;
    tv.checks["zero-failures"] = tv.holds;
    tv.notes.push_back(std::to_string(pb.trials) + " trials, seed " + std::to_string(pb.seed) + ", " +
                       std::to_string(failures) + " failures");
    return tv;
}

// ---------------------------------------------------------------------------
// A contraction for G is one for the reverse graph and the undirected closure.

inline TheoremVerdict verify_edge_symmetry(const FiniteInstance& inst, const EnumerationOptions& options = {}) {
    TheoremVerdict tv;
    tv.theorem = "edge-symmetry";
    const FiniteGraph reverse = inst.graph.reverse();
    const FiniteGraph closure = inst.graph.undirected_closure();
    bool rev_ok = true, closure_ok = true;
    tv.maps_enumerated = for_each_map(inst, options, [&](std::size_t index, const TableMap& map) {
        if (!check_contraction(inst.space, inst.graph, map).is_contraction) return;
        ++tv.contractions_found;
        const bool r = check_contraction(inst.space, reverse, map).is_contraction;
        const bool c = check_contraction(inst.space, closure, map).is_contraction;
        rev_ok = rev_ok && r;
        closure_ok = closure_ok && c;
        if ((!r || !c) && !tv.counterexample)
            tv.counterexample = Counterexample{index, map, !r ? "fails on the reverse graph" : "fails on the closure"};
    });
    tv.checks["reverse-graph"] = rev_ok;
    tv.checks["undirected-closure"] = closure_ok;
    tv.holds = rev_ok && closure_ok;
    return tv;
}

/// Tx0 in [x0] implies T([x0]) within [x0], for every contraction.
inline TheoremVerdict verify_component_invariance(const FiniteInstance& inst, const EnumerationOptions& options = {}) {
    TheoremVerdict tv;
    tv.theorem = "component-invariance";
    const auto ids = component_ids(inst.graph);
    std::size_t cases = 0;
    tv.maps_enumerated = for_each_map(inst, options, [&](std::size_t index, const TableMap& map) {
        if (!check_contraction(inst.space, inst.graph, map).is_contraction) return;
        ++tv.contractions_found;
        for (std::size_t x0 = 0; x0 < map.size(); ++x0) {
            if (ids[map(x0)] != ids[x0]) continue;
            ++cases;
            for (std::size_t y = 0; y < map.size(); ++y)
                if (ids[y] == ids[x0] && ids[map(y)] != ids[x0] && !tv.counterexample)
                    tv.counterexample = Counterexample{index, map,
                                                       inst.space.label(y) + " leaves the component of " +
                                                           inst.space.label(x0)};
        }
    });
    tv.holds = !tv.counterexample;
    tv.checks["invariant"] = tv.holds;
    tv.notes.push_back(std::to_string(cases) + " (map, x0) cases with Tx0 in [x0]");
    return tv;
}

}  // namespace gcontract
