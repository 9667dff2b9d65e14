#pragma once

// Picard / weakly Picard classification. A verdict is licensed by one of
// three routes, tried in order:
//   property-star-route           sequential completeness + Property (*)
//   orbital-continuity-route      orbital continuity, hypothesis Tx in [x]
//   orbital-g-continuity-route    orbital G-continuity, hypothesis x in X_T
// Orbits always run alongside; a licensed verdict that an orbit contradicts
// raises ConsistencyError.

#include "gcontract/continuity.hpp"
#include "gcontract/contraction.hpp"
#include "gcontract/convergence.hpp"
#include "gcontract/errors.hpp"
#include "gcontract/fixed_points.hpp"
#include "gcontract/graph.hpp"
#include "gcontract/maps.hpp"
#include "gcontract/space.hpp"
#include "gcontract/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace gcontract {

inline constexpr const char* route_property_star = "property-star-route";
inline constexpr const char* route_orbital = "orbital-continuity-route";
inline constexpr const char* route_orbital_g = "orbital-g-continuity-route";
inline constexpr const char* route_none = "none";

struct RestrictedVerdict {
    std::string component;
    std::string start;  // the point whose component this is
    Tristate picard;
    std::optional<std::string> limit;
};

struct ClassificationReport {
    std::string fixed_points;
    std::optional<std::size_t> fixed_point_count;  // nullopt: a continuum
    std::string x_t;
    bool x_t_empty = true;
    std::vector<std::string> components_meeting_x_t;
    std::optional<bool> cardinality_check;  // finite carriers only
    bool weakly_connected = false;

    Tristate picard;
    std::optional<std::string> picard_limit;
    Tristate weakly_picard;
    std::vector<RestrictedVerdict> restricted;

    std::string route = route_none;
    std::string empirical;  // exhaustive-orbits or probe-orbits
    std::vector<std::string> notes;
    bool heuristic = false;

    void check_consistency() const {
        if (picard.is_holds() && !weakly_picard.is_holds())
            throw ConsistencyError("Picard verdict without the weakly Picard verdict");
        if (picard.is_holds() && fixed_point_count != std::size_t{1})
            throw ConsistencyError("Picard verdict with a fixed-point count other than one");
    }
};

namespace detail {

inline void corroborate(const Tristate& licensed, const Tristate& observed, const std::string& what) {
    if (licensed.value == Truth::not_determined || observed.value == Truth::not_determined) return;
    if (licensed.value != observed.value)
        throw ConsistencyError(what + ": route verdict " + to_string(licensed.value) + " contradicts orbits (" +
                               observed.witness + ")");
}

inline std::string set_string(const FiniteSpace& space, const std::vector<std::size_t>& xs) {
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += space.label(xs[i]);
    }
    return out + "}";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite carriers. Every orbit is enumerated, so the empirical verdicts are
// exact and the routes only add their licence.

struct FiniteOrbitSummary {
    std::size_t start = 0;
    Orbit<std::size_t> orbit;
    CauchyResult cauchy;
    std::optional<std::size_t> limit_fixed_point;  // fixed point whose class the tail settles in
};

inline std::vector<FiniteOrbitSummary> finite_orbits(const FiniteSpace& space, const TableMap& map) {
    const auto fix = find_fixed_points(map);
    std::vector<FiniteOrbitSummary> out;
    for (std::size_t x = 0; x < space.size(); ++x) {
        FiniteOrbitSummary s;
        s.start = x;
        s.orbit = orbit(map, x, space.size() + 1);
        s.cauchy = detect_cauchy(space, s.orbit);
        if (s.cauchy.cauchy) {
            const std::size_t tail = s.orbit.values[s.orbit.cycle_start];
            for (std::size_t f : fix)
                if (space.indistinguishable(f, tail)) {
                    s.limit_fixed_point = f;
                    break;
                }
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline ClassificationReport classify(const FiniteSpace& space, const FiniteGraph& graph, const TableMap& map,
                                     const ContractionVerdict& verdict, const ContinuityProfile& profile) {
    ClassificationReport rep;
    rep.empirical = "exhaustive-orbits";
    const auto fix = find_fixed_points(map);
    const auto xt = x_t_set(graph, map);
    const auto ids = component_ids(graph);
    rep.fixed_points = detail::set_string(space, fix);
    rep.fixed_point_count = fix.size();
    rep.x_t = detail::set_string(space, xt);
    rep.x_t_empty = xt.empty();
    rep.weakly_connected = is_weakly_connected(graph);

    std::vector<std::size_t> meeting;
    for (std::size_t x : xt)
        if (std::find(meeting.begin(), meeting.end(), ids[x]) == meeting.end()) meeting.push_back(ids[x]);
    auto members = [&](std::size_t id) {
        std::vector<std::size_t> out;
        for (std::size_t y = 0; y < ids.size(); ++y)
            if (ids[y] == id) out.push_back(y);
        return out;
    };
    for (std::size_t id : meeting) rep.components_meeting_x_t.push_back(detail::set_string(space, members(id)));
    rep.cardinality_check = fix.size() == meeting.size();

    // exact orbit facts
    const auto orbits = finite_orbits(space, map);
    Tristate observed_picard = Tristate::holds("exhaustive-orbits");
    Tristate observed_weak = Tristate::holds("exhaustive-orbits");
    for (const auto& s : orbits) {
        if (!s.limit_fixed_point) {
            std::string w = "orbit from " + space.label(s.start) + " does not converge to a fixed point";
            observed_weak = Tristate::violated(w, "exhaustive-orbits");
            if (!observed_picard.is_violated()) observed_picard = Tristate::violated(w, "exhaustive-orbits");
        }
    }
    if (!observed_picard.is_violated()) {
        if (fix.size() != 1) {
            observed_picard = Tristate::violated(std::to_string(fix.size()) + " fixed points", "exhaustive-orbits");
        } else {
            for (const auto& s : orbits)
                if (!space.indistinguishable(*s.limit_fixed_point, fix.front())) {
                    observed_picard = Tristate::violated(
                        "orbit from " + space.label(s.start) + " converges away from " + space.label(fix.front()),
                        "exhaustive-orbits");
                    break;
                }
        }
    }

    rep.picard = observed_picard;
    rep.weakly_picard = observed_weak;
    if (observed_picard.is_holds()) rep.picard_limit = space.label(fix.front());

    if (!verdict.is_contraction) {
        rep.notes.push_back("not a contraction: verdicts come from orbits alone");
        rep.check_consistency();
        return rep;
    }

    // route selection; finite carriers are sequentially complete
    std::vector<std::size_t> hypothesis;  // component ids the route speaks about
    if (profile.property_star.is_holds()) {
        rep.route = route_property_star;
        hypothesis = meeting;
    } else if (profile.orbitally_continuous.is_holds()) {
        rep.route = route_orbital;
        for (std::size_t x = 0; x < space.size(); ++x)
            if (ids[map(x)] == ids[x] && std::find(hypothesis.begin(), hypothesis.end(), ids[x]) == hypothesis.end())
                hypothesis.push_back(ids[x]);
    } else if (profile.orbitally_g_continuous.is_holds()) {
        rep.route = route_orbital_g;
        hypothesis = meeting;
    } else {
        rep.notes.push_back("no route applies: verdicts come from orbits alone");
        rep.check_consistency();
        return rep;
    }

    for (std::size_t id : hypothesis) {
        const auto comp = members(id);
        RestrictedVerdict r;
        r.component = detail::set_string(space, comp);
        r.start = space.label(comp.front());
        // all orbits from the component share one limit x*
        std::optional<std::size_t> limit;
        for (std::size_t y : comp) {
            const auto& s = orbits[y];
            if (!s.limit_fixed_point)
                throw ConsistencyError(rep.route + ": orbit from " + space.label(y) + " in " + r.component +
                                       " does not converge");
            if (limit && !space.indistinguishable(*limit, *s.limit_fixed_point))
                throw ConsistencyError(rep.route + ": orbits in " + r.component + " reach different fixed points");
            if (!limit) limit = s.limit_fixed_point;
        }
        r.limit = space.label(*limit);
        const bool inside = ids[*limit] == id;
        if (rep.route == std::string(route_property_star) && !inside)
            throw ConsistencyError("property-star-route: limit outside the component " + r.component);
        r.picard = inside ? Tristate::holds(rep.route)
                          : Tristate::violated("limit " + space.label(*limit) + " lies outside " + r.component,
                                               rep.route);
        rep.restricted.push_back(std::move(r));
    }

    // global verdicts licensed by the route
    const bool has_hypothesis = !hypothesis.empty();
    Tristate licensed_picard = Tristate::unknown(rep.route);
    if (rep.weakly_connected && (rep.route == std::string(route_orbital) || has_hypothesis))
        licensed_picard = Tristate::holds(rep.route);
    else if (rep.route == std::string(route_property_star) && meeting.size() != 1)
        licensed_picard = Tristate::violated(std::to_string(meeting.size()) + " components meet X_T", rep.route);

    bool all_hypothesis = false;
    if (rep.route == std::string(route_orbital)) {
        all_hypothesis = true;
        for (std::size_t x = 0; x < space.size(); ++x) all_hypothesis = all_hypothesis && ids[map(x)] == ids[x];
    } else {
        all_hypothesis = xt.size() == space.size();
    }
    Tristate licensed_weak = all_hypothesis ? Tristate::holds(rep.route) : Tristate::unknown(rep.route);

    detail::corroborate(licensed_picard, observed_picard, "picard");
    detail::corroborate(licensed_weak, observed_weak, "weakly-picard");
    if (licensed_picard.value != Truth::not_determined) rep.picard = licensed_picard;
    if (licensed_weak.value != Truth::not_determined) rep.weakly_picard = licensed_weak;
    if (rep.route == std::string(route_property_star) && !*rep.cardinality_check)
        throw ConsistencyError("property-star-route: fixed points and components meeting X_T differ in number");
    rep.check_consistency();
    return rep;
}

/// Map sending [x0] to x0 and everything else to y0.
inline TableMap build_disconnection_counterexample(const FiniteGraph& graph, std::size_t x0, std::size_t y0) {
    if (x0 >= graph.size() || y0 >= graph.size()) throw InputError("counterexample points outside the carrier");
    const auto ids = component_ids(graph);
    if (is_weakly_connected(graph)) throw PreconditionError("graph is weakly connected");
    if (ids[x0] == ids[y0]) throw PreconditionError("x0 and y0 lie in the same component");
    std::vector<std::size_t> image(graph.size());
    for (std::size_t x = 0; x < graph.size(); ++x) image[x] = ids[x] == ids[x0] ? x0 : y0;
    return TableMap(std::move(image));
}

/// First vertex of the first component and first vertex outside it.
inline std::optional<std::pair<std::size_t, std::size_t>> disconnected_pair(const FiniteGraph& graph) {
    const auto ids = component_ids(graph);
    for (std::size_t y = 0; y < ids.size(); ++y)
        if (ids[y] != ids[0]) return std::pair<std::size_t, std::size_t>{0, y};
    return std::nullopt;
}

/// Finite-scale form of the extension through equicontinuity: A must be
/// dense (meet every zero-distance class); returns whether T^n x -> x* for
/// every x in X.
inline bool check_equicontinuity_extension(const FiniteSpace& space, const TableMap& map,
                                           const std::vector<std::size_t>& subset, std::size_t x_star) {
    for (std::size_t x = 0; x < space.size(); ++x) {
        bool met = false;
        for (std::size_t a : subset) met = met || space.indistinguishable(a, x);
        if (!met) throw PreconditionError("subset is not dense in the carrier");
    }
    for (std::size_t x = 0; x < space.size(); ++x) {
        const auto o = orbit(map, x, space.size() + 1);
        const auto c = detect_cauchy(space, o);
        if (!c.cauchy || !space.indistinguishable(o.values[o.cycle_start], x_star)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Real line

struct ProbeOptions {
    std::vector<double> starts;
    std::size_t budget = 10000;
    std::size_t window = 16;
    double eps = 1e-6;
    bool sequentially_complete = true;
};

struct ProbeOrbit {
    double start = 0;
    Orbit<double> orbit;
    CauchyResult cauchy;
    std::optional<double> limit;
    std::optional<Rational> fixed_point;  // limit snapped to an exact fixed point
};

/// Limits within this many eps of an exact fixed point are taken to be it.
inline constexpr double snap_factor = 1e3;

inline ProbeOrbit probe_orbit(const RealLineSpace& space, const PiecewiseMap& map, double x,
                              const std::vector<BasicEntourage>& basis, const FixedPointSet& fix,
                              const ProbeOptions& options) {
    ProbeOrbit p;
    p.start = x;
    const auto probes = probe_entourages(basis, options.eps);
    p.orbit = orbit(map, x, {options.budget, 1e12}, ConvergenceWindow(space, probes, options.window));
    p.cauchy = detect_cauchy(space, p.orbit, probes, options.window);
    if (p.cauchy.cauchy) {
        const double last = p.orbit.extendable() ? p.orbit.values[p.orbit.cycle_start] : p.orbit.values.back();
        const bool settled = p.orbit.status == OrbitStatus::converged ||
                             (p.orbit.extendable() && p.orbit.cycle_length == 1);
        if (settled) {
            p.limit = last;
            for (const auto& f : fix.points())
                if (std::fabs(last - to_double(f)) <= snap_factor * options.eps) p.fixed_point = f;
            if (!p.fixed_point)
                for (const auto& i : fix.exact.intervals())
                    if (!i.degenerate() && i.contains(last)) p.fixed_point = from_double(last);
        }
    }
    return p;
}

inline std::vector<double> probe_starts(const RealLineSpace& space, const ProbeOptions& options) {
    std::vector<double> starts = options.starts;
    for (double g : space.grid())
        if (std::find(starts.begin(), starts.end(), g) == starts.end()) starts.push_back(g);
    return starts;
}

inline ClassificationReport classify(const RealLineSpace& space, const RealLineGraph& graph, const PiecewiseMap& map,
                                     const ContractionVerdict& verdict, const ContinuityProfile& profile,
                                     const std::vector<BasicEntourage>& basis, const ProbeOptions& options = {}) {
    ClassificationReport rep;
    rep.empirical = "probe-orbits";
    rep.heuristic = true;
    const FixedPointSet fix = find_fixed_points(map);
    const RealXT xt = x_t_set(graph, map, space.grid_exact());
    const RealSet domain(map.domain());
    const RealSet active = graph.kind() == RelationKind::diagonal ? RealSet() : active_region(graph, map.domain());
    rep.fixed_points = fix.to_string();
    rep.fixed_point_count = fix.count();
    rep.x_t = xt.set.to_string();
    rep.x_t_empty = xt.set.empty();
    rep.weakly_connected = is_weakly_connected(graph, map.domain());
    if (xt.heuristic) rep.notes.push_back("X_T sampled on quadratic pieces");
    rep.notes.push_back("completeness modeled as sequential completeness");

    // components: the active region, and singletons elsewhere
    const bool active_meets = !intersect(xt.set, active).empty();
    if (active_meets) rep.components_meeting_x_t.push_back(active.to_string());
    const RealSet lonely = subtract(xt.set, active);
    for (const auto& i : lonely.intervals()) {
        if (i.degenerate()) rep.components_meeting_x_t.push_back("{" + to_string(*i.lo) + "}");
        else rep.components_meeting_x_t.push_back("each point of " + i.to_string());
    }

    // empirical verdicts
    std::vector<ProbeOrbit> probes;
    for (double x : probe_starts(space, options))
        if (map.domain().contains(x)) probes.push_back(probe_orbit(space, map, x, basis, fix, options));
    Tristate observed_weak = Tristate::holds("probe-orbits", true);
    for (const auto& p : probes)
        if (!p.fixed_point) {
            std::string w = "orbit from " + format_double(p.start) + " " +
                            (p.orbit.status == OrbitStatus::diverged ? std::string("diverges")
                                                                     : "does not settle at a fixed point");
            observed_weak = Tristate::violated(w, "probe-orbits", true);
            break;
        }
    Tristate observed_picard = Tristate::holds("probe-orbits", true);
    if (rep.fixed_point_count != std::size_t{1}) {
        observed_picard = Tristate::violated(
            rep.fixed_point_count ? std::to_string(*rep.fixed_point_count) + " fixed points" : "a continuum of fixed points",
            "fixed-point-count");
    } else if (observed_weak.is_violated()) {
        observed_picard = observed_weak;
    } else {
        const Rational& only = fix.points().empty() ? Rational(0) : fix.points().front();
        for (const auto& p : probes)
            if (*p.fixed_point != only) {
                observed_picard = Tristate::violated("orbit from " + format_double(p.start) + " reaches another limit",
                                                     "probe-orbits", true);
                break;
            }
    }
    rep.picard = observed_picard;
    rep.weakly_picard = observed_weak;
    if (observed_picard.is_holds() && !fix.points().empty()) rep.picard_limit = to_string(fix.points().front());

    if (!verdict.is_contraction) {
        rep.notes.push_back("not a contraction: verdicts come from orbits alone");
        rep.check_consistency();
        return rep;
    }
    if (!options.sequentially_complete) {
        rep.notes.push_back("carrier not declared sequentially complete: no route applies");
        rep.check_consistency();
        return rep;
    }

    // Property (*) declared: each component meeting X_T must hold exactly one
    // fixed point, a consequence the exact solver can falsify.
    bool star = profile.property_star.is_holds();
    if (star) {
        if (active_meets && !intersect(fix.exact, active).single_point()) star = false;
        if (!star) rep.notes.push_back("declared Property (*) contradicted by the fixed points of the active component");
    }

    // which components the route speaks about
    bool active_hyp = false;
    if (star) {
        rep.route = route_property_star;
        active_hyp = active_meets;
    } else if (profile.orbitally_continuous.is_holds()) {
        rep.route = route_orbital;
        for (const auto& p : map.pieces()) {
            if (!p.affine()) continue;
            RealSet part = intersect(active, RealSet(p.domain));
            if (!intersect(affine_image(part, p.slope, p.intercept), active).empty()) active_hyp = true;
        }
        if (!map.affine()) {
            for (const auto& g : space.grid_exact())
                if (active.contains(g) && active.contains(map.evaluate_exact(g))) active_hyp = true;
            rep.notes.push_back("hypothesis Tx in [x] sampled on quadratic pieces");
        }
    } else if (profile.orbitally_g_continuous.is_holds()) {
        rep.route = route_orbital_g;
        active_hyp = active_meets;
    } else {
        rep.notes.push_back("no route applies: verdicts come from orbits alone");
        rep.check_consistency();
        return rep;
    }
    const bool route_heuristic = (rep.route == std::string(route_property_star) && profile.property_star.heuristic) ||
                                 (rep.route == std::string(route_orbital) && profile.orbitally_continuous.heuristic) ||
                                 (rep.route == std::string(route_orbital_g) && profile.orbitally_g_continuous.heuristic);
    if (route_heuristic) rep.notes.push_back("route hypothesis established on probes only");

    if (active_hyp) {
        RestrictedVerdict r;
        r.component = active.to_string();
        // start: a probe inside the component satisfying the hypothesis
        std::optional<double> start;
        for (double x : probe_starts(space, options)) {
            if (!active.contains(x)) continue;
            const Rational ex = from_double(x);
            const bool hyp = rep.route == std::string(route_orbital) ? active.contains(map.evaluate_exact(ex))
                                                                     : xt.set.contains(ex);
            if (hyp) {
                start = x;
                break;
            }
        }
        if (!start) start = to_double(active.representative());
        r.start = format_double(*start);
        std::optional<Rational> limit;
        for (const auto& p : probes) {
            if (!active.contains(p.start)) continue;
            if (!p.fixed_point)
                throw ConsistencyError(rep.route + ": orbit from " + format_double(p.start) + " in " + r.component +
                                       " does not converge to a fixed point");
            if (limit && *limit != *p.fixed_point)
                throw ConsistencyError(rep.route + ": orbits in " + r.component + " reach different limits");
            limit = p.fixed_point;
        }
        if (!limit) {
            auto p = probe_orbit(space, map, *start, basis, fix, options);
            if (!p.fixed_point)
                throw ConsistencyError(rep.route + ": orbit from " + r.start + " does not converge to a fixed point");
            limit = p.fixed_point;
        }
        r.limit = to_string(*limit);
        const bool inside = active.contains(*limit);
        if (rep.route == std::string(route_property_star) && !inside)
            throw ConsistencyError("property-star-route: limit outside the component " + r.component);
        r.picard = inside ? Tristate::holds(rep.route, route_heuristic)
                          : Tristate::violated("limit " + to_string(*limit) + " lies outside " + r.component,
                                               rep.route, route_heuristic);
        rep.restricted.push_back(std::move(r));
    }
    // isolated fixed points are one-point components satisfying every hypothesis
    for (const auto& f : fix.points()) {
        if (active.contains(f)) continue;
        RestrictedVerdict r;
        r.component = "{" + to_string(f) + "}";
        r.start = to_string(f);
        r.limit = to_string(f);
        r.picard = Tristate::holds(rep.route);
        rep.restricted.push_back(std::move(r));
    }

    Tristate licensed_picard = Tristate::unknown(rep.route);
    if (rep.weakly_connected && (rep.route == std::string(route_orbital) || !xt.set.empty()))
        licensed_picard = Tristate::holds(rep.route, route_heuristic);
    else if (rep.fixed_point_count != std::size_t{1})
        licensed_picard = observed_picard;  // exact count
    Tristate licensed_weak = Tristate::unknown(rep.route);
    const bool all_hyp = rep.route == std::string(route_orbital) ? rep.weakly_connected : xt.set == domain;
    if (all_hyp) licensed_weak = Tristate::holds(rep.route, route_heuristic);

    detail::corroborate(licensed_picard, observed_picard, "picard");
    detail::corroborate(licensed_weak, observed_weak, "weakly-picard");
    if (licensed_picard.value != Truth::not_determined) rep.picard = licensed_picard;
    if (licensed_weak.value != Truth::not_determined) rep.weakly_picard = licensed_weak;
    rep.check_consistency();
    return rep;
}

}  // namespace gcontract
