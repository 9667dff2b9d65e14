#pragma once

// Fix(T) and X_T.

#include "gcontract/graph.hpp"
#include "gcontract/maps.hpp"
#include "gcontract/real_set.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace gcontract {

inline std::vector<std::size_t> find_fixed_points(const TableMap& map) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < map.size(); ++x)
        if (map(x) == x) out.push_back(x);
    return out;
}

struct FixedPointSet {
    RealSet exact;                   // isolated solutions and identity pieces
    std::vector<double> approximate; // irrational roots on quadratic pieces

    /// nullopt when some piece is the identity (a continuum of fixed points).
    std::optional<std::size_t> count() const {
        std::size_t n = approximate.size();
        for (const auto& i : exact.intervals()) {
            if (!i.degenerate()) return std::nullopt;
            ++n;
        }
        return n;
    }

    std::vector<Rational> points() const {
        std::vector<Rational> out;
        for (const auto& i : exact.intervals())
            if (i.degenerate()) out.push_back(*i.lo);
        return out;
    }

    bool contains(double x) const {
        if (exact.contains(x)) return true;
        for (double a : approximate)
            if (a == x) return true;
        return false;
    }

    bool empty() const { return exact.empty() && approximate.empty(); }

    std::string to_string() const {
        std::string out;
        for (const auto& i : exact.intervals()) {
            if (!out.empty()) out += ", ";
            out += i.degenerate() ? gcontract::to_string(*i.lo) : i.to_string();
        }
        for (double a : approximate) {
            if (!out.empty()) out += ", ";
            out += "~" + format_double(a);
        }
        return "{" + out + "}";
    }
};

namespace detail {

inline std::optional<BigInt> exact_sqrt(const BigInt& v) {
    if (v < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(v);
    if (r * r == v) return r;
    return std::nullopt;
}

inline std::optional<Rational> exact_sqrt(const Rational& v) {
    auto n = exact_sqrt(BigInt(boost::multiprecision::numerator(v)));
    auto d = exact_sqrt(BigInt(boost::multiprecision::denominator(v)));
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
}

}  // namespace detail

/// Solves x = T(x) piece by piece. Affine pieces are solved exactly; quadratic
/// pieces exactly when the discriminant is a rational square.
inline FixedPointSet find_fixed_points(const PiecewiseMap& map) {
    FixedPointSet out;
    for (const auto& p : map.pieces()) {
        if (p.affine()) {
            if (p.slope == 1) {
                if (p.intercept == 0) out.exact = unite(out.exact, RealSet(p.domain));
                continue;
            }
            Rational x = p.intercept / (Rational(1) - p.slope);
            if (p.domain.contains(x)) out.exact = unite(out.exact, RealSet(Interval::point(x)));
            continue;
        }
        // quadratic*x^2 + (slope - 1)*x + intercept = 0
        const Rational a = p.quadratic;
        const Rational b = p.slope - 1;
        const Rational c = p.intercept;
        const Rational disc = b * b - 4 * a * c;
        if (disc < 0) continue;
        if (auto root = detail::exact_sqrt(disc)) {
            for (int sign : {-1, 1}) {
                Rational x = (-b + sign * *root) / (2 * a);
                if (p.domain.contains(x)) out.exact = unite(out.exact, RealSet(Interval::point(x)));
            }
        } else {
            double s = std::sqrt(to_double(disc));
            for (int sign : {-1, 1}) {
                double x = (-to_double(b) + sign * s) / (2 * to_double(a));
                if (p.domain.contains(x)) out.approximate.push_back(x);
            }
        }
    }
    return out;
}

/// X_T on a real-line graph. Exact for affine pieces; quadratic pieces only
/// contribute sampled grid points and mark the result heuristic.
struct RealXT {
    RealSet set;
    bool heuristic = false;
};

inline RealXT x_t_set(const RealLineGraph& graph, const PiecewiseMap& map, const std::vector<Rational>& grid) {
    RealXT out;
    const FixedPointSet fix = find_fixed_points(map);
    out.set = fix.exact;
    if (!fix.approximate.empty()) out.heuristic = true;
    if (graph.kind() == RelationKind::diagonal) return out;

    const RealSet active = active_region(graph, map.domain());
    for (const auto& p : map.pieces()) {
        RealSet part = intersect(active, RealSet(p.domain));
        if (part.empty()) continue;
        if (!p.affine()) {
            out.heuristic = true;
            for (const auto& g : grid)
                if (part.contains(g) && graph.has_edge(g, p.value(g))) out.set = unite(out.set, RealSet(Interval::point(g)));
            continue;
        }
        RealSet candidates = intersect(part, affine_preimage(graph.region(), p.slope, p.intercept));
        // relation between x and a*x + b reduces to a half-line in x
        const Rational c = Rational(1) - p.slope;
        auto half = [&](bool x_below_image) -> RealSet {
            // x <= Tx  <=>  c*x <= b ;  x >= Tx  <=>  c*x >= b
            if (c == 0) return (x_below_image ? p.intercept >= 0 : p.intercept <= 0) ? RealSet::all() : RealSet();
            Rational t = p.intercept / c;
            bool upper = (c > 0) == x_below_image;
            return upper ? RealSet(Interval::below(t, true)) : RealSet(Interval::above(t, true));
        };
        if (graph.kind() == RelationKind::order_leq) candidates = intersect(candidates, half(true));
        if (graph.kind() == RelationKind::order_geq) candidates = intersect(candidates, half(false));
        out.set = unite(out.set, candidates);
    }
    return out;
}

}  // namespace gcontract
