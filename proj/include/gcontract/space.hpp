#pragma once

// Carriers, generating pseudometric families, and basic entourages.
//
// A basic entourage is a finite intersection of strict balls
// V(rho, r) = {(x, y) : rho(x, y) < r}. Membership is always decided with the
// strict IEEE comparison; no tolerance is applied here.

#include "gcontract/errors.hpp"
#include "gcontract/rational.hpp"
#include "gcontract/real_set.hpp"

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdio>
#include <cstdlib>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gcontract {

/// A space presented through a finite family of pseudometrics.
template <class S>
concept PseudometricSpace = requires(const S& s, const typename S::point_type& p, std::size_t k, std::string_view id) {
    typename S::point_type;
    { s.member_count() } -> std::convertible_to<std::size_t>;
    { s.member_id(k) } -> std::convertible_to<std::string>;
    { s.member_index(id) } -> std::same_as<std::optional<std::size_t>>;
    { s.distance(k, p, p) } -> std::convertible_to<double>;
    s.check_point(p);
};

// ---------------------------------------------------------------------------
// Finite carriers

struct TablePseudometric {
    std::string id;
    std::size_t size = 0;
    std::vector<double> values;  // row-major size*size

    double operator()(std::size_t x, std::size_t y) const { return values[x * size + y]; }
};

/// Every pseudometric-axiom violation of an exact table, one line each.
inline std::vector<std::string> pseudometric_violations(const std::string& id,
                                                        const std::vector<std::vector<Rational>>& rows,
                                                        const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    const std::size_t n = labels.size();
    if (rows.size() != n) {
        out.push_back("pseudometric '" + id + "': expected " + std::to_string(n) + " rows, got " +
                      std::to_string(rows.size()));
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            out.push_back("pseudometric '" + id + "': row " + labels[i] + " has " + std::to_string(rows[i].size()) +
                          " entries, expected " + std::to_string(n));
            return out;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i][i] != 0) out.push_back("pseudometric '" + id + "': nonzero diagonal at " + labels[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (rows[i][j] < 0)
                out.push_back("pseudometric '" + id + "': negative distance " + labels[i] + "," + labels[j]);
            if (j > i && rows[i][j] != rows[j][i])
                out.push_back("pseudometric '" + id + "': asymmetric entry " + labels[i] + "," + labels[j]);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (i < k && rows[i][k] > rows[i][j] + rows[j][k])
                    out.push_back("pseudometric '" + id + "': triangle inequality fails for " + labels[i] + "," +
                                  labels[j] + "," + labels[k]);
    return out;
}

struct FiniteCarrier {
    std::vector<std::string> labels;
    std::vector<std::optional<double>> coordinates;

    std::size_t size() const { return labels.size(); }

    std::optional<std::size_t> find(std::string_view label) const {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) return std::nullopt;
        return static_cast<std::size_t>(it - labels.begin());
    }

    std::size_t index_of(std::string_view label) const {
        if (auto i = find(label)) return *i;
        throw InputError("unknown point label '" + std::string(label) + "'");
    }
};

class FiniteSpace {
public:
    using point_type = std::size_t;

    FiniteSpace() = default;

    /// Validates labels and every table; throws ConfigError listing all violations.
    static FiniteSpace create(FiniteCarrier carrier,
                              const std::vector<std::pair<std::string, std::vector<std::vector<Rational>>>>& tables) {
        std::vector<std::string> problems;
        if (carrier.labels.empty()) problems.push_back("finite carrier has no points");
        for (std::size_t i = 0; i < carrier.labels.size(); ++i)
            for (std::size_t j = i + 1; j < carrier.labels.size(); ++j)
                if (carrier.labels[i] == carrier.labels[j])
                    problems.push_back("duplicate point label '" + carrier.labels[i] + "'");
        if (tables.empty()) problems.push_back("pseudometric family is empty");
        if (carrier.coordinates.empty()) carrier.coordinates.resize(carrier.labels.size());

        FiniteSpace space;
        for (const auto& [id, rows] : tables) {
            auto v = pseudometric_violations(id, rows, carrier.labels);
            problems.insert(problems.end(), v.begin(), v.end());
            if (!v.empty()) continue;
            TablePseudometric t{id, carrier.size(), {}};
            for (const auto& row : rows)
                for (const auto& entry : row) t.values.push_back(to_double(entry));
            space.members_.push_back(std::move(t));
        }
        for (std::size_t i = 0; i < tables.size(); ++i)
            for (std::size_t j = i + 1; j < tables.size(); ++j)
                if (tables[i].first == tables[j].first)
                    problems.push_back("duplicate pseudometric id '" + tables[i].first + "'");
        if (!problems.empty()) throw ConfigError(problems);
        space.carrier_ = std::move(carrier);
        space.separating_ = space.compute_separating();
        return space;
    }

    /// Skips axiom validation. Used to build deliberately broken tables.
    static FiniteSpace unchecked(FiniteCarrier carrier, std::vector<TablePseudometric> members) {
        FiniteSpace space;
        if (carrier.coordinates.empty()) carrier.coordinates.resize(carrier.labels.size());
        space.carrier_ = std::move(carrier);
        space.members_ = std::move(members);
        space.separating_ = space.compute_separating();
        return space;
    }

    const FiniteCarrier& carrier() const { return carrier_; }
    std::size_t size() const { return carrier_.size(); }
    const std::string& label(std::size_t x) const { return carrier_.labels[x]; }
    std::size_t index_of(std::string_view label) const { return carrier_.index_of(label); }

    std::size_t member_count() const { return members_.size(); }
    const std::string& member_id(std::size_t k) const { return members_[k].id; }
    const TablePseudometric& member(std::size_t k) const { return members_[k]; }
    std::optional<std::size_t> member_index(std::string_view id) const {
        for (std::size_t k = 0; k < members_.size(); ++k)
            if (members_[k].id == id) return k;
        return std::nullopt;
    }

    double distance(std::size_t k, std::size_t x, std::size_t y) const { return members_[k](x, y); }

    void check_point(std::size_t x) const {
        if (x >= size()) throw DomainError("point index " + std::to_string(x) + " outside finite carrier");
    }

    /// All members vanish on (x, y).
    bool indistinguishable(std::size_t x, std::size_t y) const {
        for (const auto& m : members_)
            if (m(x, y) != 0) return false;
        return true;
    }

    bool separating() const { return separating_; }

    /// Largest distance over all members and pairs.
    double diameter() const {
        double d = 0;
        for (const auto& m : members_)
            for (double v : m.values) d = std::max(d, v);
        return d;
    }

    std::string describe(std::size_t x) const { return label(x); }

private:
    bool compute_separating() const {
        for (std::size_t x = 0; x < size(); ++x)
            for (std::size_t y = x + 1; y < size(); ++y)
                if (indistinguishable(x, y)) return false;
        return true;
    }

    FiniteCarrier carrier_;
    std::vector<TablePseudometric> members_;
    bool separating_ = true;
};

// ---------------------------------------------------------------------------
// Real-line carriers

/// rho(x, y) = scale * |x - y| with scale > 0.
struct ScaledAbsPseudometric {
    std::string id;
    Rational scale{1};
};

class RealLineSpace {
public:
    using point_type = double;

    RealLineSpace() = default;

    static RealLineSpace create(Interval domain, std::vector<Rational> grid, std::vector<ScaledAbsPseudometric> members) {
        std::vector<std::string> problems;
        if (domain.empty()) problems.push_back("real-line domain is empty");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!domain.contains(grid[i]))
                problems.push_back("sample-grid point " + to_string(grid[i]) + " lies outside the domain");
            if (i > 0 && !(grid[i - 1] < grid[i])) problems.push_back("sample grid is not strictly increasing");
        }
        if (members.empty()) problems.push_back("pseudometric family is empty");
        for (const auto& m : members)
            if (m.scale <= 0) problems.push_back("pseudometric '" + m.id + "': scale must be positive");
        if (!problems.empty()) throw ConfigError(problems);
        RealLineSpace space;
        space.domain_ = std::move(domain);
        space.grid_exact_ = std::move(grid);
        for (const auto& g : space.grid_exact_) space.grid_.push_back(to_double(g));
        space.members_ = std::move(members);
        for (const auto& m : space.members_) space.scales_.push_back(to_double(m.scale));
        return space;
    }

    const Interval& domain() const { return domain_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<Rational>& grid_exact() const { return grid_exact_; }

    std::size_t member_count() const { return members_.size(); }
    const std::string& member_id(std::size_t k) const { return members_[k].id; }
    const ScaledAbsPseudometric& member(std::size_t k) const { return members_[k]; }
    std::optional<std::size_t> member_index(std::string_view id) const {
        for (std::size_t k = 0; k < members_.size(); ++k)
            if (members_[k].id == id) return k;
        return std::nullopt;
    }

    double distance(std::size_t k, double x, double y) const {
        double d = x - y;
        return scales_[k] * (d < 0 ? -d : d);
    }

    void check_point(double x) const {
        if (!domain_.contains(x)) throw DomainError("point " + std::to_string(x) + " outside domain " + domain_.to_string());
    }

    /// Scaled absolute-difference families always separate points.
    bool separating() const { return true; }

    std::string describe(double x) const;

private:
    Interval domain_;
    std::vector<double> grid_;
    std::vector<Rational> grid_exact_;
    std::vector<ScaledAbsPseudometric> members_;
    std::vector<double> scales_;
};

/// Shortest decimal that round-trips, falling back to %.17g.
inline std::string format_double(double x) {
    char buf[32];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string RealLineSpace::describe(double x) const { return format_double(x); }

// ---------------------------------------------------------------------------
// Basic entourages

struct EntourageTerm {
    std::size_t member = 0;
    double radius = 1;

    bool operator==(const EntourageTerm&) const = default;
};

class BasicEntourage {
public:
    BasicEntourage() = default;

    /// Resolves ids against the family; radii must be positive.
    template <PseudometricSpace S>
    static BasicEntourage make(const S& space, const std::vector<std::pair<std::string, double>>& terms) {
        if (terms.empty()) throw InputError("basic entourage needs at least one term");
        BasicEntourage v;
        for (const auto& [id, radius] : terms) {
            auto k = space.member_index(id);
            if (!k) throw InputError("unknown pseudometric id '" + id + "'");
            if (!(radius > 0)) throw InputError("entourage radius must be positive");
            v.terms_.push_back({*k, radius});
        }
        return v;
    }

    static BasicEntourage from_terms(std::vector<EntourageTerm> terms) {
        if (terms.empty()) throw InputError("basic entourage needs at least one term");
        for (const auto& t : terms)
            if (!(t.radius > 0)) throw InputError("entourage radius must be positive");
        BasicEntourage v;
        v.terms_ = std::move(terms);
        return v;
    }

    const std::vector<EntourageTerm>& terms() const { return terms_; }

    template <PseudometricSpace S>
    std::string describe(const S& space) const {
        std::string out;
        for (const auto& t : terms_) {
            if (!out.empty()) out += " & ";
            out += "V(" + space.member_id(t.member) + "," + format_double(t.radius) + ")";
        }
        return out;
    }

    bool operator==(const BasicEntourage&) const = default;

private:
    std::vector<EntourageTerm> terms_;
};

template <PseudometricSpace S>
bool contains(const S& space, const BasicEntourage& v, const typename S::point_type& x,
              const typename S::point_type& y) {
    space.check_point(x);
    space.check_point(y);
    for (const auto& t : v.terms())
        if (!(space.distance(t.member, x, y) < t.radius)) return false;
    return true;
}

/// alpha V: every radius multiplied by alpha.
inline BasicEntourage scale(const BasicEntourage& v, double alpha) {
    if (!(alpha > 0)) throw InputError("entourage scale factor must be positive");
    auto terms = v.terms();
    for (auto& t : terms) t.radius *= alpha;
    return BasicEntourage::from_terms(std::move(terms));
}

/// The Minkowski gauge max_i rho_i(x, y) / r_i; V coincides with {gauge < 1}.
template <PseudometricSpace S>
class MinkowskiGauge {
public:
    MinkowskiGauge(const S& space, BasicEntourage source) : space_(&space), source_(std::move(source)) {}

    double operator()(const typename S::point_type& x, const typename S::point_type& y) const {
        double g = 0;
        for (const auto& t : source_.terms()) g = std::max(g, space_->distance(t.member, x, y) / t.radius);
        return g;
    }

    const BasicEntourage& source() const { return source_; }

private:
    const S* space_;
    BasicEntourage source_;
};

template <PseudometricSpace S>
MinkowskiGauge<S> minkowski_gauge(const S& space, const BasicEntourage& v) {
    return MinkowskiGauge<S>(space, v);
}

/// lambda* = max_i rho_i(x, y) / r_i. (x, y) lies in lambda V exactly when lambda > lambda*.
template <PseudometricSpace S>
double lambda_infimum(const S& space, const BasicEntourage& v, const typename S::point_type& x,
                      const typename S::point_type& y) {
    space.check_point(x);
    space.check_point(y);
    return minkowski_gauge(space, v)(x, y);
}

/// Checks alpha V o beta V within (alpha + beta) V over the sampled triples.
template <PseudometricSpace S>
bool compose_bound_check(const S& space, const BasicEntourage& v, double alpha, double beta,
                         std::span<const std::array<typename S::point_type, 3>> sample) {
    const BasicEntourage av = scale(v, alpha);
    const BasicEntourage bv = scale(v, beta);
    const BasicEntourage sum = scale(v, alpha + beta);
    for (const auto& [x, y, z] : sample)
        if (contains(space, av, x, y) && contains(space, bv, y, z) && !contains(space, sum, x, z)) return false;
    return true;
}

/// Every triple over a finite carrier, in index order.
inline std::vector<std::array<std::size_t, 3>> all_triples(const FiniteSpace& space) {
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
            for (std::size_t z = 0; z < space.size(); ++z) out.push_back({x, y, z});
    return out;
}

/// One V(rho, radius) per member of the family.
template <PseudometricSpace S>
std::vector<BasicEntourage> default_basis(const S& space, double radius = 1.0) {
    std::vector<BasicEntourage> out;
    for (std::size_t k = 0; k < space.member_count(); ++k) out.push_back(BasicEntourage::from_terms({{k, radius}}));
    return out;
}

}  // namespace gcontract
