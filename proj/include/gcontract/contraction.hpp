#pragma once

// Edge preservation, the contraction constant and nonexpansiveness.
//
// The weight-decrease condition is checked through its pointwise form: for
// every edge (x, y) and every member rho of the family,
// rho(Tx, Ty) <= alpha * rho(x, y).

#include "gcontract/errors.hpp"
#include "gcontract/graph.hpp"
#include "gcontract/maps.hpp"
#include "gcontract/rational.hpp"
#include "gcontract/real_set.hpp"
#include "gcontract/space.hpp"
#include "gcontract/verdict.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gcontract {

struct ContractionVerdict {
    bool preserves_edges = true;
    std::string unpreserved_edge;  // "(x,y) -> (Tx,Ty)" when B1 fails

    /// Supremum of the stretch ratio over edges at positive distance. Zero when
    /// no such edge exists (alpha_star_vacuous).
    double alpha_star = 0;
    std::optional<Rational> alpha_star_exact;
    bool alpha_star_vacuous = false;
    bool alpha_star_unbounded = false;
    std::string stretch_witness;

    bool zero_edge_ok = true;
    std::string zero_edge_witness;

    bool is_contraction = false;
    bool near_miss = false;      // alpha_star == 1
    bool trivial_graph = false;  // only loops
    bool heuristic = false;      // quadratic pieces checked on the sample grid only

    std::vector<std::string> witnesses() const {
        std::vector<std::string> out;
        if (!unpreserved_edge.empty()) out.push_back("edge not preserved: " + unpreserved_edge);
        if (!zero_edge_witness.empty()) out.push_back("zero-distance edge stretched: " + zero_edge_witness);
        if (!stretch_witness.empty() && !is_contraction) out.push_back("stretch: " + stretch_witness);
        return out;
    }
};

namespace detail {

inline void finish(ContractionVerdict& v) {
    v.near_miss = !v.alpha_star_unbounded && !v.alpha_star_vacuous && v.alpha_star == 1.0;
    v.is_contraction = v.preserves_edges && v.zero_edge_ok && !v.alpha_star_unbounded && v.alpha_star < 1.0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite carriers

inline ContractionVerdict check_contraction(const FiniteSpace& space, const FiniteGraph& graph, const TableMap& map) {
    if (graph.size() != space.size() || map.size() != space.size())
        throw InputError("space, graph and map sizes disagree");
    ContractionVerdict v;
    v.trivial_graph = graph.trivial();
    bool any_positive = false;
    auto pair = [&](std::size_t a, std::size_t b) { return "(" + space.label(a) + "," + space.label(b) + ")"; };
    for (auto [x, y] : graph.edges()) {
        const std::size_t tx = map(x), ty = map(y);
        if (v.preserves_edges && !graph.has_edge(tx, ty)) {
            v.preserves_edges = false;
            v.unpreserved_edge = pair(x, y) + " -> " + pair(tx, ty);
        }
        for (std::size_t k = 0; k < space.member_count(); ++k) {
            const double d = space.distance(k, x, y);
            const double e = space.distance(k, tx, ty);
            if (d == 0) {
                if (e != 0 && v.zero_edge_ok) {
                    v.zero_edge_ok = false;
                    v.zero_edge_witness = pair(x, y) + " under " + space.member_id(k);
                }
                continue;
            }
            const double ratio = e / d;
            if (!any_positive || ratio > v.alpha_star) {
                v.alpha_star = ratio;
                v.stretch_witness = pair(x, y) + " -> " + pair(tx, ty) + " under " + space.member_id(k) +
                                    ", ratio " + format_double(ratio);
            }
            any_positive = true;
        }
    }
    v.alpha_star_vacuous = !any_positive;
    detail::finish(v);
    return v;
}

/// Pointwise weight decrease at a fixed alpha on every edge.
inline bool satisfies_b2(const FiniteSpace& space, const FiniteGraph& graph, const TableMap& map, double alpha) {
    for (auto [x, y] : graph.edges())
        for (std::size_t k = 0; k < space.member_count(); ++k)
            if (!(space.distance(k, map(x), map(y)) <= alpha * space.distance(k, x, y))) return false;
    return true;
}

inline Tristate check_nonexpansive(const FiniteSpace& space, const TableMap& map) {
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
            for (std::size_t k = 0; k < space.member_count(); ++k)
                if (space.distance(k, map(x), map(y)) > space.distance(k, x, y))
                    return Tristate::violated("(" + space.label(x) + "," + space.label(y) + ") under " +
                                                  space.member_id(k),
                                              "exhaustive-pairs");
    return Tristate::holds("exhaustive-pairs");
}

// ---------------------------------------------------------------------------
// Real line

/// Two distinct members of a non-degenerate interval.
inline std::pair<Rational, Rational> two_points(const Interval& i) {
    if (i.lo && i.hi) {
        Rational w = (*i.hi - *i.lo) / 4;
        return {*i.lo + w, *i.hi - w};
    }
    if (i.lo) return {*i.lo + 1, *i.lo + 2};
    if (i.hi) return {*i.hi - 2, *i.hi - 1};
    return {Rational(0), Rational(1)};
}

/// Lipschitz constant of an affine piecewise map restricted to `set`,
/// computed exactly. Only pieces meeting `set` matter.
struct LipschitzBound {
    Rational value{0};
    bool unbounded = false;
    bool vacuous = true;  // fewer than two points
    std::string witness;
};

inline LipschitzBound lipschitz_constant(const PiecewiseMap& map, const RealSet& set) {
    LipschitzBound out;
    struct Part {
        std::size_t piece;
        Interval interval;
    };
    std::vector<Part> parts;
    for (std::size_t p = 0; p < map.pieces().size(); ++p) {
        const RealSet meet = intersect(set, RealSet(map.pieces()[p].domain));
        for (const auto& i : meet.intervals()) parts.push_back({p, i});
    }
    std::sort(parts.begin(), parts.end(),
              [](const Part& a, const Part& b) { return detail::lower_before(a.interval, b.interval); });

    auto consider = [&](const Rational& ratio, const std::string& witness) {
        if (out.vacuous || ratio > out.value) {
            out.value = ratio;
            out.witness = witness;
        }
        out.vacuous = false;
    };
    auto pair = [](const Rational& x, const Rational& y) { return "(" + to_string(x) + "," + to_string(y) + ")"; };

    for (const auto& part : parts) {
        if (part.interval.degenerate()) continue;
        const Piece& piece = map.pieces()[part.piece];
        auto [x, y] = two_points(part.interval);
        consider(abs(piece.slope), pair(x, y) + " in " + piece.domain.to_string());
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (parts[i].piece == parts[j].piece) continue;
            const Interval& a = parts[i].interval;
            const Interval& b = parts[j].interval;
            const Piece& pa = map.pieces()[parts[i].piece];
            const Piece& pb = map.pieces()[parts[j].piece];
            std::vector<Rational> xs, ys;
            if (a.lo) xs.push_back(*a.lo);
            if (a.hi) xs.push_back(*a.hi);
            if (b.lo) ys.push_back(*b.lo);
            if (b.hi) ys.push_back(*b.hi);
            for (const auto& x : xs)
                for (const auto& y : ys) {
                    const Rational numerator = pb.value(y) - pa.value(x);
                    const Rational gap = y - x;
                    if (gap > 0) {
                        consider(abs(numerator) / gap, pair(x, y) + " across " + pa.domain.to_string() + " and " +
                                                           pb.domain.to_string());
                    } else if (numerator != 0) {
                        // the parts touch at x == y and the map jumps there
                        out.unbounded = true;
                        out.vacuous = false;
                        out.witness = "jump at " + to_string(x);
                        return out;
                    }
                }
        }
    return out;
}

namespace detail {

/// Sampled fallback for maps with quadratic pieces.
inline ContractionVerdict sampled_contraction(const RealLineSpace& space, const RealLineGraph& graph,
                                              const PiecewiseMap& map, const RealSet& active) {
    ContractionVerdict v;
    v.heuristic = true;
    std::vector<Rational> pts;
    for (const auto& g : space.grid_exact())
        if (active.contains(g)) pts.push_back(g);
    bool any = false;
    for (const auto& x : pts)
        for (const auto& y : pts) {
            if (x == y || !graph.has_edge(x, y)) continue;
            const Rational tx = map.evaluate_exact(x), ty = map.evaluate_exact(y);
            if (v.preserves_edges && !graph.has_edge(tx, ty)) {
                v.preserves_edges = false;
                v.unpreserved_edge = "(" + to_string(x) + "," + to_string(y) + ") -> (" + to_string(tx) + "," +
                                     to_string(ty) + ")";
            }
            const Rational ratio = abs(tx - ty) / abs(x - y);
            if (!any || ratio > *v.alpha_star_exact) {
                v.alpha_star_exact = ratio;
                v.stretch_witness = "(" + to_string(x) + "," + to_string(y) + ")";
            }
            any = true;
        }
    v.alpha_star_vacuous = !any;
    if (v.alpha_star_exact) v.alpha_star = to_double(*v.alpha_star_exact);
    return v;
}

}  // namespace detail

/// Exact for affine maps; maps with quadratic pieces are checked on the
/// sample grid and flagged heuristic.
inline ContractionVerdict check_contraction(const RealLineSpace& space, const RealLineGraph& graph,
                                            const PiecewiseMap& map) {
    const RealSet active = active_region(graph, map.domain());
    ContractionVerdict v;
    if (graph.kind() == RelationKind::diagonal || !active.has_two_points()) {
        v.trivial_graph = true;
        v.alpha_star_vacuous = true;
        v.alpha_star_exact = Rational(0);
        detail::finish(v);
        return v;
    }
    if (!map.affine()) {
        v = detail::sampled_contraction(space, graph, map, active);
        detail::finish(v);
        return v;
    }

    // images of each part of the active region, in order
    struct Part {
        const Piece* piece;
        RealSet set;
        RealSet image;
    };
    std::vector<Part> parts;
    RealSet image;
    for (const auto& p : map.pieces()) {
        RealSet set = intersect(active, RealSet(p.domain));
        if (set.empty()) continue;
        RealSet img = affine_image(set, p.slope, p.intercept);
        image = unite(image, img);
        parts.push_back({&p, std::move(set), std::move(img)});
    }

    auto fail = [&](const Rational& x, const Rational& y) {
        v.preserves_edges = false;
        v.unpreserved_edge = "(" + to_string(x) + "," + to_string(y) + ") -> (" + to_string(map.evaluate_exact(x)) +
                             "," + to_string(map.evaluate_exact(y)) + ")";
    };

    if (!image.single_point()) {
        RealSet outside = subtract(image, graph.region());
        if (!outside.empty()) {
            // some x maps outside the region; pair it with any y of different image
            Rational target = outside.representative();
            for (const auto& part : parts) {
                RealSet pre = intersect(part.set, affine_preimage(RealSet(Interval::point(target)), part.piece->slope,
                                                                  part.piece->intercept));
                if (pre.empty()) continue;
                Rational x = pre.representative();
                for (const auto& other : parts) {
                    RealSet rest = subtract(other.set, affine_preimage(RealSet(Interval::point(target)),
                                                                       other.piece->slope, other.piece->intercept));
                    if (rest.empty()) continue;
                    Rational y = rest.representative();
                    if (!graph.has_edge(x, y)) std::swap(x, y);
                    fail(x, y);
                    break;
                }
                break;
            }
            if (v.preserves_edges) v.preserves_edges = false, v.unpreserved_edge = "image leaves the region";
        } else if (!graph.symmetric()) {
            // order kinds: T must be nondecreasing on the active region
            auto points_where = [](const Part& part, const RealSet& target) {
                return intersect(part.set, affine_preimage(target, part.piece->slope, part.piece->intercept));
            };
            auto report = [&](Rational x, Rational y) {
                if (graph.kind() == RelationKind::order_geq) std::swap(x, y);
                fail(x, y);
            };
            for (const auto& part : parts)
                if (part.set.has_two_points() && part.piece->slope < 0) {
                    const auto& first = part.set.intervals().front();
                    if (first.degenerate()) {
                        report(*first.lo, RealSet(part.set.intervals()[1]).representative());
                    } else {
                        auto [x, y] = two_points(first);
                        report(x, y);
                    }
                    break;
                }
            for (std::size_t i = 0; v.preserves_edges && i + 1 < parts.size(); ++i) {
                const auto hi = parts[i].image.supremum();
                const auto lo = parts[i + 1].image.infimum();
                if (hi.value && lo.value && *hi.value <= *lo.value) continue;
                Rational m = hi.value && lo.value ? (*hi.value + *lo.value) / 2
                             : lo.value           ? *lo.value + 1
                             : hi.value           ? *hi.value - 1
                                                  : Rational(0);
                RealSet xs = points_where(parts[i], RealSet(Interval::above(m, false)));
                RealSet ys = points_where(parts[i + 1], RealSet(Interval::below(m, false)));
                report(xs.representative(), ys.representative());
            }
        }
    }

    LipschitzBound lip = lipschitz_constant(map, active);
    v.alpha_star_unbounded = lip.unbounded;
    v.alpha_star_vacuous = lip.vacuous;
    v.stretch_witness = lip.witness;
    if (!lip.unbounded) {
        v.alpha_star_exact = lip.value;
        v.alpha_star = to_double(lip.value);
    }
    detail::finish(v);
    return v;
}

/// Holds iff the map is 1-Lipschitz on the whole domain; exact for affine maps.
inline Tristate check_nonexpansive(const RealLineSpace& space, const PiecewiseMap& map) {
    if (!map.affine()) {
        const auto& grid = space.grid_exact();
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = i + 1; j < grid.size(); ++j)
                if (abs(map.evaluate_exact(grid[i]) - map.evaluate_exact(grid[j])) > grid[j] - grid[i])
                    return Tristate::violated("(" + to_string(grid[i]) + "," + to_string(grid[j]) + ")",
                                              "grid-pairs", true);
        return Tristate::unknown("grid-pairs", true);
    }
    LipschitzBound lip = lipschitz_constant(map, RealSet(map.domain()));
    if (lip.unbounded || lip.value > 1) return Tristate::violated(lip.witness, "piece-slopes");
    return Tristate::holds("piece-slopes");
}

// ---------------------------------------------------------------------------

/// Contraction constant used downstream: alpha_star * (1 + slack), kept at or
/// below the midpoint of (alpha_star, 1); slack itself when alpha_star is 0.
inline double select_alpha(const ContractionVerdict& v, double slack = 1e-9, std::optional<double> requested = {}) {
    if (!v.is_contraction) throw PreconditionError("select_alpha() needs a verified contraction");
    if (requested) {
        if (!(*requested > 0) || !(*requested < 1)) throw PreconditionError("contraction constant must lie in (0,1)");
        if (*requested < v.alpha_star) throw PreconditionError("requested constant is below alpha-star");
        return *requested;
    }
    if (v.alpha_star == 0) return slack;
    return std::min(v.alpha_star * (1 + slack), (1 + v.alpha_star) / 2);
}

}  // namespace gcontract
