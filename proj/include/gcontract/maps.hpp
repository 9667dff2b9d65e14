#pragma once

// Self-maps: finite tables and one-dimensional piecewise maps, plus orbits.

#include "gcontract/errors.hpp"
#include "gcontract/rational.hpp"
#include "gcontract/real_set.hpp"
#include "gcontract/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gcontract {

class TableMap {
public:
    TableMap() = default;
    explicit TableMap(std::vector<std::size_t> image) : image_(std::move(image)) {
        for (auto y : image_)
            if (y >= image_.size()) throw InputError("table map sends a point outside the carrier");
    }

    static TableMap constant(std::size_t n, std::size_t c) { return TableMap(std::vector<std::size_t>(n, c)); }
    static TableMap identity(std::size_t n) {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = i;
        return TableMap(std::move(v));
    }

    std::size_t size() const { return image_.size(); }
    std::size_t operator()(std::size_t x) const {
        if (x >= image_.size()) throw DomainError("point index outside the table map");
        return image_[x];
    }
    const std::vector<std::size_t>& image() const { return image_; }

    bool operator==(const TableMap&) const = default;

private:
    std::vector<std::size_t> image_;
};

/// quadratic*x^2 + slope*x + intercept on `domain`.
struct Piece {
    Interval domain;
    Rational slope{0};
    Rational intercept{0};
    Rational quadratic{0};

    bool affine() const { return quadratic == 0; }
    Rational value(const Rational& x) const { return quadratic * x * x + slope * x + intercept; }

    std::string formula() const {
        std::string out;
        auto term = [&](const Rational& c, const std::string& var) {
            if (c == 0) return;
            if (!out.empty()) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            Rational mag = abs(c);
            if (var.empty() || mag != 1) out += to_string(mag);
            if (!var.empty() && mag != 1) out += "*";
            out += var;
        };
        term(quadratic, "x^2");
        term(slope, "x");
        term(intercept, "");
        return out.empty() ? "0" : out;
    }

    bool operator==(const Piece& o) const {
        return domain == o.domain && slope == o.slope && intercept == o.intercept && quadratic == o.quadratic;
    }
};

class PiecewiseMap {
public:
    PiecewiseMap() = default;

    /// Pieces must be pairwise disjoint and cover `domain`; violations are collected.
    static PiecewiseMap create(Interval domain, std::vector<Piece> pieces) {
        std::vector<std::string> problems;
        if (pieces.empty()) problems.push_back("piecewise map has no pieces");
        for (const auto& p : pieces)
            if (p.domain.empty()) problems.push_back("piece " + p.domain.to_string() + " is empty");
        for (std::size_t i = 0; i < pieces.size(); ++i)
            for (std::size_t j = i + 1; j < pieces.size(); ++j)
                if (!intersect(RealSet(pieces[i].domain), RealSet(pieces[j].domain)).empty())
                    problems.push_back("pieces " + pieces[i].domain.to_string() + " and " +
                                       pieces[j].domain.to_string() + " overlap");
        RealSet covered;
        for (const auto& p : pieces) covered = unite(covered, RealSet(p.domain));
        RealSet gap = subtract(RealSet(domain), covered);
        if (!gap.empty()) problems.push_back("pieces do not cover the domain; missing " + gap.to_string());
        RealSet spill = subtract(covered, RealSet(domain));
        if (!spill.empty()) problems.push_back("pieces extend outside the domain: " + spill.to_string());
        if (!problems.empty()) throw ConfigError(problems);

        std::sort(pieces.begin(), pieces.end(),
                  [](const Piece& a, const Piece& b) { return detail::lower_before(a.domain, b.domain); });
        PiecewiseMap map;
        map.domain_ = std::move(domain);
        map.pieces_ = std::move(pieces);
        for (const auto& p : map.pieces_) map.fast_.push_back(FastPiece::from(p));
        return map;
    }

    const Interval& domain() const { return domain_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    bool affine() const {
        return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.affine(); });
    }

    std::size_t piece_index(const Rational& x) const {
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (pieces_[i].domain.contains(x)) return i;
        throw DomainError("point " + to_string(x) + " lies outside every piece");
    }

    std::size_t piece_index(double x) const {
        if (!std::isfinite(x)) throw DomainError("non-finite point");
        return piece_index(from_double(x));
    }

    Rational evaluate_exact(const Rational& x) const { return pieces_[piece_index(x)].value(x); }

    double operator()(double x) const { return fast_[piece_index(x)](x); }

private:
    // Coefficients over a common denominator so that e.g. (x + 5) / 3 at 4
    // evaluates to exactly 3.
    struct FastPiece {
        double quadratic = 0, slope = 0, intercept = 0, denominator = 1;

        static FastPiece from(const Piece& p) {
            BigInt den = boost::multiprecision::lcm(
                boost::multiprecision::lcm(denominator_of(p.quadratic), denominator_of(p.slope)),
                denominator_of(p.intercept));
            auto scaled = [&](const Rational& c) { return Rational(c * den); };
            const BigInt limit = BigInt(1) << 53;
            auto exact = [&](const Rational& c) {
                return boost::multiprecision::abs(boost::multiprecision::numerator(c)) < limit;
            };
            if (den < limit && exact(scaled(p.quadratic)) && exact(scaled(p.slope)) && exact(scaled(p.intercept)))
                return {to_double(scaled(p.quadratic)), to_double(scaled(p.slope)), to_double(scaled(p.intercept)),
                        den.convert_to<double>()};
            return {to_double(p.quadratic), to_double(p.slope), to_double(p.intercept), 1.0};
        }

        static BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

        double operator()(double x) const {
            double num = quadratic == 0 ? slope * x + intercept : (quadratic * x + slope) * x + intercept;
            return denominator == 1 ? num : num / denominator;
        }
    };

    Interval domain_;
    std::vector<Piece> pieces_;
    std::vector<FastPiece> fast_;
};

// ---------------------------------------------------------------------------
// Orbits

enum class OrbitStatus { converged, periodic, diverged, budget_exhausted };

inline std::string to_string(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::converged: return "converged";
        case OrbitStatus::periodic: return "periodic";
        case OrbitStatus::diverged: return "diverged";
        case OrbitStatus::budget_exhausted: return "budget-exhausted";
    }
    return "unknown";
}

/// values[n] = T^n(start). Periodic orbits stop at the first repetition and
/// can be extended indefinitely through at().
template <class P>
struct Orbit {
    P start{};
    std::vector<P> values;
    OrbitStatus status = OrbitStatus::budget_exhausted;
    std::size_t cycle_start = 0;
    std::size_t cycle_length = 0;

    bool extendable() const { return status == OrbitStatus::periodic; }

    std::optional<P> at(std::size_t n) const {
        if (n < values.size()) return values[n];
        if (!extendable()) return std::nullopt;
        return values[cycle_start + (n - cycle_start) % cycle_length];
    }

    /// Number of indices available through at(), capped at `wanted`.
    std::size_t horizon(std::size_t wanted) const { return extendable() ? wanted : std::min(wanted, values.size()); }
};

inline Orbit<std::size_t> orbit(const TableMap& map, std::size_t x, std::size_t budget = 10000) {
    if (budget < 1) throw PreconditionError("orbit budget must be at least 1");
    Orbit<std::size_t> o;
    o.start = x;
    o.values.push_back(x);
    std::vector<long long> seen(map.size(), -1);
    seen.at(x) = 0;
    for (std::size_t step = 0; step < budget; ++step) {
        std::size_t next = map(o.values.back());
        if (seen[next] >= 0) {
            o.status = OrbitStatus::periodic;
            o.cycle_start = static_cast<std::size_t>(seen[next]);
            o.cycle_length = o.values.size() - o.cycle_start;
            return o;
        }
        seen[next] = static_cast<long long>(o.values.size());
        o.values.push_back(next);
    }
    o.status = OrbitStatus::budget_exhausted;
    return o;
}

struct OrbitOptions {
    std::size_t budget = 10000;
    double escape_radius = 1e12;
};

struct NoStop {
    bool operator()(std::span<const double>) const { return false; }
};

/// Iterates until the budget is spent, the orbit repeats exactly, leaves the
/// escape radius (diverged) or `stop` accepts the recorded prefix (converged).
template <class StopRule = NoStop>
Orbit<double> orbit(const PiecewiseMap& map, double x, const OrbitOptions& options = {}, StopRule stop = {}) {
    if (options.budget < 1) throw PreconditionError("orbit budget must be at least 1");
    Orbit<double> o;
    o.start = x;
    o.values.push_back(x);
    std::unordered_map<double, std::size_t> seen{{x, 0}};
    for (std::size_t step = 0; step < options.budget; ++step) {
        double next = map(o.values.back());
        if (!std::isfinite(next) || std::fabs(next) > options.escape_radius) {
            o.values.push_back(next);
            o.status = OrbitStatus::diverged;
            return o;
        }
        if (auto it = seen.find(next); it != seen.end()) {
            o.status = OrbitStatus::periodic;
            o.cycle_start = it->second;
            o.cycle_length = o.values.size() - o.cycle_start;
            return o;
        }
        seen.emplace(next, o.values.size());
        o.values.push_back(next);
        if (stop(std::span<const double>(o.values))) {
            o.status = OrbitStatus::converged;
            return o;
        }
    }
    o.status = OrbitStatus::budget_exhausted;
    return o;
}

}  // namespace gcontract
