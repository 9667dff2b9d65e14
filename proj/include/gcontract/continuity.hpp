#pragma once

// Continuity, orbital continuity (plain and along graph edges), Property (*)
// and the profile that bundles them.

#include "gcontract/contraction.hpp"
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

struct ContinuityProfile {
    Tristate continuous;
    Tristate orbitally_continuous;
    Tristate orbitally_g_continuous;
    Tristate nonexpansive;
    Tristate equicontinuous_powers;
    Tristate property_star;

    /// continuous => orbitally continuous => orbitally G-continuous.
    void check_consistency() const {
        if (continuous.is_holds() && orbitally_continuous.is_violated())
            throw ConsistencyError("continuous map reported as not orbitally continuous");
        if (orbitally_continuous.is_holds() && orbitally_g_continuous.is_violated())
            throw ConsistencyError("orbitally continuous map reported as not orbitally G-continuous");
        if (nonexpansive.is_holds() && continuous.is_violated())
            throw ConsistencyError("nonexpansive map reported as discontinuous");
    }
};

// ---------------------------------------------------------------------------
// Finite carriers. The topology is the partition into zero-distance classes,
// discrete when the family separates points.

inline std::optional<std::pair<std::size_t, std::size_t>> class_violation(const FiniteSpace& space, const TableMap& map,
                                                                          const std::vector<std::size_t>& at) {
    for (std::size_t z : at)
        for (std::size_t y = 0; y < space.size(); ++y)
            if (space.indistinguishable(z, y) && !space.indistinguishable(map(z), map(y))) return std::pair{z, y};
    return std::nullopt;
}

inline Tristate check_continuity(const FiniteSpace& space, const TableMap& map) {
    if (space.separating()) return Tristate::holds("discrete-topology");
    std::vector<std::size_t> all(space.size());
    for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
    if (auto bad = class_violation(space, map, all))
        return Tristate::violated("x_n=" + space.label(bad->first) + " -> " + space.label(bad->second) + ", T(x_n)=" +
                                      space.label(map(bad->first)) + " but T(" + space.label(bad->second) +
                                      ")=" + space.label(map(bad->second)),
                                  "zero-distance-classes");
    return Tristate::holds("zero-distance-classes");
}

/// Exact. A violating subsequence can always be taken constant at some
/// z = T^p x with p >= 1, i.e. z in T(X); constant sequences use loops only,
/// so the graph variant reduces to the same condition.
inline Tristate check_orbital_continuity(const FiniteSpace& space, const TableMap& map) {
    if (space.separating()) return Tristate::holds("discrete-topology");
    std::vector<std::size_t> image;
    for (std::size_t x = 0; x < map.size(); ++x) image.push_back(map(x));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (auto bad = class_violation(space, map, image))
        return Tristate::violated("constant subsequence at " + space.label(bad->first) + " converges to " +
                                      space.label(bad->second) + ", p_n=const",
                                  "zero-distance-classes");
    return Tristate::holds("zero-distance-classes");
}

inline Tristate check_orbital_g_continuity(const FiniteSpace& space, const FiniteGraph&, const TableMap& map) {
    return check_orbital_continuity(space, map);
}

/// Exact on finite carriers: a convergent sequence eventually stays in the
/// class of its limit, so (*) holds iff every z indistinguishable from x has
/// an edge (z, x).
inline Tristate check_property_star(const FiniteSpace& space, const FiniteGraph& graph) {
    if (space.separating()) return Tristate::holds("finite-auto");
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t z = 0; z < space.size(); ++z)
            if (space.indistinguishable(z, x) && !graph.has_edge(z, x))
                return Tristate::violated("constant sequence " + space.label(z) + " converges to " + space.label(x) +
                                              " without an edge into it",
                                          "finite-exact");
    return Tristate::holds("finite-exact");
}

inline ContinuityProfile continuity_profile(const FiniteSpace& space, const FiniteGraph& graph, const TableMap& map) {
    ContinuityProfile p;
    p.continuous = check_continuity(space, map);
    p.orbitally_continuous = check_orbital_continuity(space, map);
    p.orbitally_g_continuous = check_orbital_g_continuity(space, graph, map);
    p.nonexpansive = check_nonexpansive(space, map);
    // {T^n} is equicontinuous iff every power respects zero-distance classes,
    // which follows from (and implies) continuity of T.
    p.equicontinuous_powers = p.continuous;
    p.equicontinuous_powers.provenance = space.separating() ? "discrete-uniformity" : "zero-distance-classes";
    p.property_star = check_property_star(space, graph);
    p.check_consistency();
    return p;
}

// ---------------------------------------------------------------------------
// Real line

struct Discontinuity {
    Rational point;
    Rational value;
    std::optional<Rational> left_limit;
    std::optional<Rational> right_limit;
    // sequence approaching the point from the side where the limit differs
    bool from_right = true;
    Rational offset{1};  // x_n = point +- offset / n
};

/// Exact: every piece is a polynomial, so T can only jump at piece endpoints.
inline std::vector<Discontinuity> discontinuities(const PiecewiseMap& map) {
    std::vector<Rational> ends;
    for (const auto& p : map.pieces()) {
        if (p.domain.lo) ends.push_back(*p.domain.lo);
        if (p.domain.hi) ends.push_back(*p.domain.hi);
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

    std::vector<Discontinuity> out;
    for (const auto& c : ends) {
        if (!map.domain().contains(c)) continue;
        Discontinuity d;
        d.point = c;
        d.value = map.evaluate_exact(c);
        std::optional<Rational> left_reach, right_reach;
        for (const auto& p : map.pieces()) {
            const auto& i = p.domain;
            if (i.hi && *i.hi == c && (!i.lo || *i.lo < c)) {
                d.left_limit = p.value(c);
                left_reach = i.lo ? std::optional<Rational>(c - *i.lo) : std::nullopt;
            }
            if (i.lo && *i.lo == c && (!i.hi || *i.hi > c)) {
                d.right_limit = p.value(c);
                right_reach = i.hi ? std::optional<Rational>(*i.hi - c) : std::nullopt;
            }
        }
        const bool right_bad = d.right_limit && *d.right_limit != d.value;
        const bool left_bad = d.left_limit && *d.left_limit != d.value;
        if (!right_bad && !left_bad) continue;
        d.from_right = right_bad;
        const auto& reach = right_bad ? right_reach : left_reach;
        d.offset = !reach || *reach > 1 ? Rational(1) : Rational(*reach / 2);
        out.push_back(std::move(d));
    }
    return out;
}

inline std::string witness_sequence(const Discontinuity& d) {
    std::string step = d.offset == 1 ? "1/n" : to_string(d.offset) + "/n";
    std::string seq;
    if (d.point == 0) seq = d.from_right ? step : "-" + step;
    else seq = to_string(d.point) + (d.from_right ? " + " : " - ") + step;
    const Rational& limit = d.from_right ? *d.right_limit : *d.left_limit;
    return "x_n = " + seq + " -> " + to_string(d.point) + ", T(x_n) -> " + to_string(limit) + " != T(" +
           to_string(d.point) + ") = " + to_string(d.value);
}

inline Tristate check_continuity(const PiecewiseMap& map) {
    auto ds = discontinuities(map);
    if (!ds.empty()) return Tristate::violated(witness_sequence(ds.front()), "piece-boundaries");
    return Tristate::holds("piece-boundaries");
}

struct OrbitalProbeOptions {
    std::vector<double> starts;  // extra starts besides the grid and the jump points
    std::size_t budget = 200;
    double eps = 1e-6;
    std::size_t window = 4;
};

enum class OrbitalMode { plain, graph };

namespace detail {

inline std::size_t pattern_index(int pattern, std::size_t n) {
    switch (pattern) {
        case 0: return n;
        case 1: return 2 * n;
        default: return n * n;
    }
}

inline const char* pattern_name(int pattern) {
    switch (pattern) {
        case 0: return "n";
        case 1: return "2n";
        default: return "n^2";
    }
}

}  // namespace detail

/// Falsification search: along the subsequences T^{p_n} x with p_n in
/// {n, 2n, n^2} of probe orbits, looks for a limit at a jump point where the
/// images fail to follow. In graph mode only subsequences whose consecutive
/// terms are edges count. Finding nothing yields a heuristic holds.
inline Tristate probe_orbital_continuity(const RealLineSpace& space, const PiecewiseMap& map,
                                         const RealLineGraph* graph, OrbitalMode mode,
                                         const OrbitalProbeOptions& options = {}) {
    const auto jumps = discontinuities(map);
    if (jumps.empty()) return Tristate::holds("implied-by-continuity");
    if (mode == OrbitalMode::graph && graph && graph->trivial())
        return Tristate::holds("trivial-graph-constant-subsequences");

    // orbits leaving a jump point give the most direct witnesses, so try them first
    std::vector<double> starts;
    for (const auto& d : jumps) starts.push_back(to_double(d.point));
    starts.insert(starts.end(), options.starts.begin(), options.starts.end());
    starts.insert(starts.end(), space.grid().begin(), space.grid().end());

    const std::size_t w = std::max<std::size_t>(options.window, 2);
    for (double x : starts) {
        if (!map.domain().contains(x)) continue;
        const Orbit<double> o = orbit(map, x, {options.budget, 1e12});
        for (int pattern = 0; pattern < 3; ++pattern) {
            std::vector<double> sub;
            for (std::size_t n = 1;; ++n) {
                const std::size_t idx = detail::pattern_index(pattern, n);
                if (idx > options.budget) break;
                auto v = o.at(idx);
                if (!v) break;
                sub.push_back(*v);
                if (sub.size() < w) continue;
                // graph mode: the window's consecutive terms must be edges
                if (mode == OrbitalMode::graph && graph) {
                    bool edges = true;
                    for (std::size_t k = sub.size() - w; k + 1 < sub.size(); ++k)
                        edges = edges && graph->has_edge(sub[k], sub[k + 1]);
                    if (!edges) continue;
                }
                const auto [lo, hi] = std::minmax_element(sub.end() - static_cast<std::ptrdiff_t>(w), sub.end());
                if (!(*hi - *lo < options.eps)) continue;
                const double last = sub.back();
                for (const auto& d : jumps) {
                    const double p = to_double(d.point);
                    if (!(std::fabs(last - p) <= options.eps)) continue;
                    const double image = map(last);
                    const double target = to_double(d.value);
                    if (std::fabs(image - target) > 10 * options.eps)
                        return Tristate::violated("x=" + format_double(x) + ", y=" + to_string(d.point) +
                                                      ", p_n=" + detail::pattern_name(pattern) + ": T(T^p_n x) -> " +
                                                      format_double(image) + " != Ty = " + to_string(d.value),
                                                  "probe-orbits", true);
                }
                break;  // first convergence detection decides this subsequence
            }
        }
    }
    return Tristate::holds("probe-orbits", true);
}

/// Declared flag plus a falsification pass: probe orbits from sampled points of
/// X_T that settle at a fixed point must keep edges into it along their tail.
inline Tristate check_property_star(const RealLineSpace& space, const RealLineGraph& graph, const PiecewiseMap& map,
                                    bool declared, const OrbitalProbeOptions& options = {}) {
    if (!declared) return Tristate::unknown("declared");
    const FixedPointSet fix = find_fixed_points(map);
    const RealXT xt = x_t_set(graph, map, space.grid_exact());
    std::vector<double> starts = space.grid();
    starts.insert(starts.end(), options.starts.begin(), options.starts.end());
    for (double x : starts) {
        if (!xt.set.contains(x)) continue;
        const Orbit<double> o = orbit(map, x, {std::max<std::size_t>(options.budget, 1000), 1e12});
        if (o.values.size() < 2 * options.window) continue;
        const double last = o.values.back();
        if (o.status == OrbitStatus::diverged) continue;
        for (const auto& limit : fix.points()) {
            if (!(std::fabs(last - to_double(limit)) <= options.eps)) continue;
            bool any_edge = false;
            for (std::size_t k = o.values.size() - options.window; k < o.values.size(); ++k)
                any_edge = any_edge || (std::isfinite(o.values[k]) && graph.has_edge(from_double(o.values[k]), limit));
            if (!any_edge)
                return Tristate::violated("orbit from " + format_double(x) + " converges to " + to_string(limit) +
                                              " with no tail edge into the limit",
                                          "falsified", true);
        }
    }
    return Tristate::holds("declared");
}

inline ContinuityProfile continuity_profile(const RealLineSpace& space, const RealLineGraph& graph,
                                            const PiecewiseMap& map, bool declared_star,
                                            const OrbitalProbeOptions& options = {}) {
    ContinuityProfile p;
    p.continuous = check_continuity(map);
    if (p.continuous.is_holds()) {
        p.orbitally_continuous = Tristate::holds("implied-by-continuity");
    } else {
        p.orbitally_continuous = probe_orbital_continuity(space, map, &graph, OrbitalMode::plain, options);
    }
    if (p.orbitally_continuous.is_holds() && !p.orbitally_continuous.heuristic) {
        p.orbitally_g_continuous = Tristate::holds("implied-by-orbital-continuity");
    } else {
        p.orbitally_g_continuous = probe_orbital_continuity(space, map, &graph, OrbitalMode::graph, options);
    }
    p.nonexpansive = check_nonexpansive(space, map);
    if (p.nonexpansive.is_holds()) p.equicontinuous_powers = Tristate::holds("implied-by-nonexpansive");
    else p.equicontinuous_powers = Tristate::unknown("no-criterion");
    p.property_star = check_property_star(space, graph, map, declared_star, options);
    p.check_consistency();
    return p;
}

}  // namespace gcontract
