#pragma once

// Exact subsets of the real line: finite unions of intervals with rational
// (or infinite) endpoints. Punctured intervals such as [1,4]\{5/2} are held as
// two open-ended pieces and re-joined when rendered.

#include "gcontract/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace gcontract {

struct Interval {
    std::optional<Rational> lo;  // nullopt: -inf
    bool lo_closed = false;
    std::optional<Rational> hi;  // nullopt: +inf
    bool hi_closed = false;

    static Interval all() { return {}; }
    static Interval closed(Rational a, Rational b) { return {std::move(a), true, std::move(b), true}; }
    static Interval open(Rational a, Rational b) { return {std::move(a), false, std::move(b), false}; }
    static Interval point(const Rational& p) { return closed(p, p); }
    static Interval below(Rational b, bool inclusive) { return {std::nullopt, false, std::move(b), inclusive}; }
    static Interval above(Rational a, bool inclusive) { return {std::move(a), inclusive, std::nullopt, false}; }

    bool empty() const {
        if (!lo || !hi) return false;
        if (*lo < *hi) return false;
        return *lo == *hi ? !(lo_closed && hi_closed) : true;
    }

    bool degenerate() const { return lo && hi && *lo == *hi && lo_closed && hi_closed; }

    bool contains(const Rational& x) const {
        if (lo && (x < *lo || (x == *lo && !lo_closed))) return false;
        if (hi && (x > *hi || (x == *hi && !hi_closed))) return false;
        return true;
    }

    bool contains(double x) const { return std::isfinite(x) && contains(from_double(x)); }

    bool bounded() const { return lo.has_value() && hi.has_value(); }

    std::string to_string() const {
        if (degenerate()) return "{" + gcontract::to_string(*lo) + "}";
        std::string out = lo_closed ? "[" : "(";
        out += lo ? gcontract::to_string(*lo) : "-inf";
        out += ",";
        out += hi ? gcontract::to_string(*hi) : "inf";
        out += hi_closed ? "]" : ")";
        return out;
    }

    bool operator==(const Interval&) const = default;
};

namespace detail {

// Lower bounds ordered from least to most restrictive.
inline bool lower_before(const Interval& a, const Interval& b) {
    if (!a.lo) return b.lo.has_value();
    if (!b.lo) return false;
    if (*a.lo != *b.lo) return *a.lo < *b.lo;
    return a.lo_closed && !b.lo_closed;
}

// Upper bounds ordered from most to least restrictive.
inline bool upper_before(const Interval& a, const Interval& b) {
    if (!a.hi) return false;
    if (!b.hi) return true;
    if (*a.hi != *b.hi) return *a.hi < *b.hi;
    return !a.hi_closed && b.hi_closed;
}

inline Interval intersect(const Interval& a, const Interval& b) {
    Interval out;
    const Interval& low = lower_before(a, b) ? b : a;
    out.lo = low.lo;
    out.lo_closed = low.lo_closed;
    const Interval& high = upper_before(a, b) ? a : b;
    out.hi = high.hi;
    out.hi_closed = high.hi_closed;
    return out;
}

// True when b starts inside a or exactly where a ends with no gap.
inline bool joins(const Interval& a, const Interval& b) {
    if (!a.hi || !b.lo) return true;
    if (*b.lo < *a.hi) return true;
    return *b.lo == *a.hi && (a.hi_closed || b.lo_closed);
}

}  // namespace detail

class RealSet {
public:
    RealSet() = default;
    RealSet(const Interval& interval) { add(interval); }  // NOLINT(google-explicit-constructor)

    static RealSet all() { return RealSet(Interval::all()); }
    static RealSet points(const std::vector<Rational>& values) {
        RealSet out;
        for (const auto& v : values) out.add(Interval::point(v));
        return out;
    }

    const std::vector<Interval>& intervals() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    bool contains(const Rational& x) const {
        return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(x); });
    }
    bool contains(double x) const { return std::isfinite(x) && contains(from_double(x)); }

    /// At least two distinct members.
    bool has_two_points() const {
        return parts_.size() >= 2 || (parts_.size() == 1 && !parts_.front().degenerate());
    }

    std::optional<Rational> single_point() const {
        if (parts_.size() == 1 && parts_.front().degenerate()) return parts_.front().lo;
        return std::nullopt;
    }

    friend RealSet unite(const RealSet& a, const RealSet& b) {
        RealSet out = a;
        for (const auto& i : b.parts_) out.parts_.push_back(i);
        out.normalize();
        return out;
    }

    friend RealSet intersect(const RealSet& a, const RealSet& b) {
        RealSet out;
        for (const auto& i : a.parts_)
            for (const auto& j : b.parts_) {
                Interval k = detail::intersect(i, j);
                if (!k.empty()) out.parts_.push_back(k);
            }
        out.normalize();
        return out;
    }

    friend RealSet complement(const RealSet& a) {
        if (a.empty()) return all();
        RealSet out;
        const auto& p = a.parts_;
        if (p.front().lo) out.parts_.push_back(Interval::below(*p.front().lo, !p.front().lo_closed));
        for (std::size_t k = 0; k + 1 < p.size(); ++k) {
            Interval gap{p[k].hi, !p[k].hi_closed, p[k + 1].lo, !p[k + 1].lo_closed};
            if (!gap.empty()) out.parts_.push_back(gap);
        }
        if (p.back().hi) out.parts_.push_back(Interval::above(*p.back().hi, !p.back().hi_closed));
        out.normalize();
        return out;
    }

    friend RealSet subtract(const RealSet& a, const RealSet& b) { return intersect(a, complement(b)); }

    friend bool is_subset(const RealSet& a, const RealSet& b) { return subtract(a, b).empty(); }

    /// Image under x -> slope*x + intercept.
    friend RealSet affine_image(const RealSet& a, const Rational& slope, const Rational& intercept) {
        RealSet out;
        if (a.empty()) return out;
        if (slope == 0) return RealSet(Interval::point(intercept));
        for (const auto& i : a.parts_) {
            Interval k;
            auto map = [&](const std::optional<Rational>& v) -> std::optional<Rational> {
                if (!v) return std::nullopt;
                return Rational(slope * *v + intercept);
            };
            if (slope > 0) {
                k = {map(i.lo), i.lo_closed, map(i.hi), i.hi_closed};
            } else {
                k = {map(i.hi), i.hi_closed, map(i.lo), i.lo_closed};
            }
            out.parts_.push_back(k);
        }
        out.normalize();
        return out;
    }

    /// {x : slope*x + intercept in a}.
    friend RealSet affine_preimage(const RealSet& a, const Rational& slope, const Rational& intercept) {
        if (slope == 0) return a.contains(intercept) ? all() : RealSet();
        Rational inv = Rational(1) / slope;
        return affine_image(a, inv, Rational(-intercept * inv));
    }

    struct Extremum {
        std::optional<Rational> value;  // nullopt: infinite
        bool attained = false;
    };

    Extremum infimum() const {
        const auto& first = parts_.front();
        return {first.lo, first.lo_closed && first.lo.has_value()};
    }
    Extremum supremum() const {
        const auto& last = parts_.back();
        return {last.hi, last.hi_closed && last.hi.has_value()};
    }

    /// Some member, chosen deterministically; prefers an interior point.
    Rational representative() const {
        const auto& i = parts_.front();
        if (i.degenerate()) return *i.lo;
        if (i.lo && i.hi) return (*i.lo + *i.hi) / 2;
        if (i.lo) return *i.lo + 1;
        if (i.hi) return *i.hi - 1;
        return Rational(0);
    }

    /// Punctured runs render as hull\{points}; pieces are joined with " U ".
    std::string to_string() const {
        if (parts_.empty()) return "{}";
        std::string out;
        std::size_t k = 0;
        while (k < parts_.size()) {
            Interval hull = parts_[k];
            std::vector<Rational> holes;
            std::size_t j = k;
            while (j + 1 < parts_.size() && parts_[j].hi && parts_[j + 1].lo && *parts_[j].hi == *parts_[j + 1].lo &&
                   !parts_[j].hi_closed && !parts_[j + 1].lo_closed) {
                holes.push_back(*parts_[j].hi);
                ++j;
            }
            hull.hi = parts_[j].hi;
            hull.hi_closed = parts_[j].hi_closed;
            if (!out.empty()) out += " U ";
            out += hull.to_string();
            if (!holes.empty()) {
                out += "\\{";
                for (std::size_t h = 0; h < holes.size(); ++h) {
                    if (h) out += ",";
                    out += gcontract::to_string(holes[h]);
                }
                out += "}";
            }
            k = j + 1;
        }
        return out;
    }

    bool operator==(const RealSet&) const = default;

private:
    void add(const Interval& i) {
        if (!i.empty()) parts_.push_back(i);
        normalize();
    }

    void normalize() {
        std::erase_if(parts_, [](const Interval& i) { return i.empty(); });
        std::sort(parts_.begin(), parts_.end(), detail::lower_before);
        std::vector<Interval> merged;
        for (const auto& i : parts_) {
            if (!merged.empty() && detail::joins(merged.back(), i)) {
                if (detail::upper_before(merged.back(), i)) {
                    merged.back().hi = i.hi;
                    merged.back().hi_closed = i.hi_closed;
                }
            } else {
                merged.push_back(i);
            }
        }
        parts_ = std::move(merged);
    }

    std::vector<Interval> parts_;
};

}  // namespace gcontract
