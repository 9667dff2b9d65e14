#pragma once

// Line-oriented configuration:
//
//   [meta]             name, description
//   [carrier]          kind = finite | real-line; labels, coordinates; domain, grid
//   [pseudometric ID]  row = ... (one per label) | from = coordinates; scale
//   [graph]            kind; edges = a->b ...; region; exclude
//   [map]              assign = a->b ... | piece = <interval> slope=.. intercept=.. [quadratic=..]
//   [analysis]         basis, probes, sequentially-complete, property-star, max-iter, window, eps
//
// '#' starts a comment. Numbers are exact: integers, decimals, p/q.

#include "gcontract/errors.hpp"
#include "gcontract/graph.hpp"
#include "gcontract/maps.hpp"
#include "gcontract/rational.hpp"
#include "gcontract/real_set.hpp"
#include "gcontract/space.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gcontract {

struct CarrierBlock {
    std::string kind;  // finite | real-line
    std::vector<std::string> labels;
    std::vector<Rational> coordinates;
    std::optional<Interval> domain;
    std::vector<Rational> grid;
    bool operator==(const CarrierBlock&) const = default;
};

struct PseudometricBlock {
    std::string id;
    std::vector<std::vector<Rational>> rows;
    bool from_coordinates = false;
    Rational scale{1};
    bool operator==(const PseudometricBlock&) const = default;
};

struct GraphBlock {
    std::string kind = "explicit";
    std::vector<std::pair<std::string, std::string>> edges;
    std::optional<Interval> region;
    std::vector<Rational> exclude;
    bool operator==(const GraphBlock&) const = default;
};

struct MapBlock {
    std::vector<std::pair<std::string, std::string>> assign;
    std::vector<Piece> pieces;
    bool operator==(const MapBlock&) const = default;
};

struct AnalysisBlock {
    std::vector<std::vector<std::pair<std::string, Rational>>> basis;
    std::vector<std::string> probes;  // labels or numbers, resolved when built
    std::optional<bool> sequentially_complete;
    std::optional<bool> property_star;
    std::optional<std::size_t> max_iter;
    std::optional<std::size_t> window;
    std::optional<Rational> eps;
    bool operator==(const AnalysisBlock&) const = default;
};

struct SpaceConfig {
    std::string name;
    std::string description;
    CarrierBlock carrier;
    std::vector<PseudometricBlock> pseudometrics;
    GraphBlock graph;
    MapBlock map;
    AnalysisBlock analysis;
    bool operator==(const SpaceConfig&) const = default;
};

namespace config_detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view s, std::string_view separators) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (separators.find(c) != std::string_view::npos) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

/// "[a,b]", "(a,b)", "(-inf,b]", "{p}".
inline std::optional<Interval> parse_interval(std::string_view text) {
    text = trim(text);
    if (text.size() < 3) return std::nullopt;
    if (text.front() == '{' && text.back() == '}') {
        auto p = parse_rational(text.substr(1, text.size() - 2));
        if (!p) return std::nullopt;
        return Interval::point(*p);
    }
    const char open = text.front(), close = text.back();
    if ((open != '[' && open != '(') || (close != ']' && close != ')')) return std::nullopt;
    auto inner = text.substr(1, text.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto lo_text = trim(inner.substr(0, comma));
    auto hi_text = trim(inner.substr(comma + 1));
    Interval i;
    if (lo_text == "-inf") {
        if (open != '(') return std::nullopt;
    } else {
        auto v = parse_rational(lo_text);
        if (!v) return std::nullopt;
        i.lo = *v;
        i.lo_closed = open == '[';
    }
    if (hi_text == "inf" || hi_text == "+inf") {
        if (close != ')') return std::nullopt;
    } else {
        auto v = parse_rational(hi_text);
        if (!v) return std::nullopt;
        i.hi = *v;
        i.hi_closed = close == ']';
    }
    if (i.empty()) return std::nullopt;
    return i;
}

inline std::optional<bool> parse_bool(std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "no" || text == "off") return false;
    return std::nullopt;
}

inline std::optional<std::size_t> parse_count(std::string_view text) {
    auto r = parse_rational(text);
    if (!r || *r < 1 || boost::multiprecision::denominator(*r) != 1 || *r > Rational(1000000000)) return std::nullopt;
    return static_cast<std::size_t>(boost::multiprecision::numerator(*r).convert_to<unsigned long long>());
}

inline std::optional<std::pair<std::string, std::string>> parse_arrow(std::string_view token) {
    auto pos = token.find("->");
    if (pos == std::string_view::npos || pos == 0 || pos + 2 >= token.size()) return std::nullopt;
    return std::pair{std::string(token.substr(0, pos)), std::string(token.substr(pos + 2))};
}

inline std::string interval_text(const Interval& i) {
    if (i.degenerate()) return "{" + to_string(*i.lo) + "}";
    return i.to_string();
}

}  // namespace config_detail

/// Parses and checks the syntax and cross-references; every problem found is
/// reported. Semantic checks that need the built objects happen in build_problem.
inline SpaceConfig parse_config_text(std::string_view text, const std::string& source = "config") {
    using namespace config_detail;
    SpaceConfig cfg;
    std::vector<std::string> problems;
    auto problem = [&](std::size_t line, const std::string& what) {
        problems.push_back(source + ":" + std::to_string(line) + ": " + what);
    };

    enum class Block { none, meta, carrier, pseudometric, graph, map, analysis };
    Block block = Block::none;
    std::set<std::string> seen_keys;
    std::set<std::string> seen_blocks;
    const std::set<std::string> repeatable = {"row", "piece", "edges", "assign"};

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                problem(line_no, "malformed block header");
                block = Block::none;
                continue;
            }
            auto words = split(line.substr(1, line.size() - 2), " \t");
            seen_keys.clear();
            std::string name = words.empty() ? "" : words[0];
            if (name == "pseudometric") {
                if (words.size() != 2) {
                    problem(line_no, "pseudometric block needs exactly one id");
                    block = Block::none;
                    continue;
                }
                for (const auto& p : cfg.pseudometrics)
                    if (p.id == words[1]) problem(line_no, "duplicate pseudometric id '" + words[1] + "'");
                cfg.pseudometrics.push_back({words[1], {}, false, Rational(1)});
                block = Block::pseudometric;
                continue;
            }
            static const std::map<std::string, Block> names = {{"meta", Block::meta},
                                                                 {"carrier", Block::carrier},
                                                                 {"graph", Block::graph},
                                                                 {"map", Block::map},
                                                                 {"analysis", Block::analysis}};
            auto it = names.find(name);
            if (it == names.end() || words.size() != 1) {
                problem(line_no, "unknown block '" + std::string(line) + "'");
                block = Block::none;
                continue;
            }
            if (!seen_blocks.insert(name).second) problem(line_no, "duplicate block [" + name + "]");
            block = it->second;
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            problem(line_no, "expected key = value");
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (block == Block::none) {
            problem(line_no, "key '" + key + "' outside any block");
            continue;
        }
        if (!repeatable.count(key) && !seen_keys.insert(key).second) {
            problem(line_no, "duplicate key '" + key + "'");
            continue;
        }
        auto numbers = [&](std::vector<Rational>& out) {
            for (const auto& tok : split(value, " \t,")) {
                auto r = parse_rational(tok);
                if (!r) problem(line_no, "'" + tok + "' is not a number");
                else out.push_back(*r);
            }
        };
        auto unknown = [&] { problem(line_no, "unknown key '" + key + "'"); };

        switch (block) {
            case Block::none: break;
            case Block::meta:
                if (key == "name") cfg.name = std::string(value);
                else if (key == "description") cfg.description = std::string(value);
                else unknown();
                break;
            case Block::carrier:
                if (key == "kind") {
                    cfg.carrier.kind = std::string(value);
                    if (value != "finite" && value != "real-line") problem(line_no, "carrier kind must be finite or real-line");
                } else if (key == "labels") {
                    cfg.carrier.labels = split(value, " \t,");
                } else if (key == "coordinates") {
                    numbers(cfg.carrier.coordinates);
                } else if (key == "domain") {
                    cfg.carrier.domain = parse_interval(value);
                    if (!cfg.carrier.domain) problem(line_no, "malformed interval '" + std::string(value) + "'");
                } else if (key == "grid") {
                    numbers(cfg.carrier.grid);
                } else {
                    unknown();
                }
                break;
            case Block::pseudometric: {
                auto& pm = cfg.pseudometrics.back();
                if (key == "row") {
                    pm.rows.emplace_back();
                    numbers(pm.rows.back());
                } else if (key == "from") {
                    if (value != "coordinates") problem(line_no, "only 'from = coordinates' is supported");
                    pm.from_coordinates = true;
                } else if (key == "scale") {
                    auto r = parse_rational(value);
                    if (!r) problem(line_no, "'" + std::string(value) + "' is not a number");
                    else pm.scale = *r;
                } else {
                    unknown();
                }
                break;
            }
            case Block::graph:
                if (key == "kind") {
                    static const std::set<std::string> kinds = {"explicit", "complete", "diagonal-only", "order-leq",
                                                                "order-geq", "order-comparable"};
                    cfg.graph.kind = std::string(value);
                    if (!kinds.count(cfg.graph.kind)) problem(line_no, "unknown graph kind '" + cfg.graph.kind + "'");
                } else if (key == "edges") {
                    for (const auto& tok : split(value, " \t,")) {
                        auto e = parse_arrow(tok);
                        if (!e) problem(line_no, "malformed edge '" + tok + "'");
                        else cfg.graph.edges.push_back(*e);
                    }
                } else if (key == "region") {
                    cfg.graph.region = parse_interval(value);
                    if (!cfg.graph.region) problem(line_no, "malformed interval '" + std::string(value) + "'");
                } else if (key == "exclude") {
                    numbers(cfg.graph.exclude);
                } else {
                    unknown();
                }
                break;
            case Block::map:
                if (key == "assign") {
                    for (const auto& tok : split(value, " \t,")) {
                        auto e = parse_arrow(tok);
                        if (!e) problem(line_no, "malformed assignment '" + tok + "'");
                        else cfg.map.assign.push_back(*e);
                    }
                } else if (key == "piece") {
                    // the interval itself may contain a comma, so split on blanks only
                    auto words = split(value, " \t");
                    if (words.empty()) {
                        problem(line_no, "empty piece");
                        break;
                    }
                    Piece piece;
                    auto dom = parse_interval(words[0]);
                    if (!dom) problem(line_no, "malformed interval '" + words[0] + "'");
                    else piece.domain = *dom;
                    std::set<std::string> attrs;
                    for (std::size_t w = 1; w < words.size(); ++w) {
                        auto kv = split(words[w], "=");
                        if (kv.size() != 2) {
                            problem(line_no, "malformed piece attribute '" + words[w] + "'");
                            continue;
                        }
                        if (!attrs.insert(kv[0]).second) problem(line_no, "duplicate piece attribute '" + kv[0] + "'");
                        auto r = parse_rational(kv[1]);
                        if (!r) {
                            problem(line_no, "'" + kv[1] + "' is not a number");
                            continue;
                        }
                        if (kv[0] == "slope") piece.slope = *r;
                        else if (kv[0] == "intercept") piece.intercept = *r;
                        else if (kv[0] == "quadratic") piece.quadratic = *r;
                        else problem(line_no, "unknown piece attribute '" + kv[0] + "'");
                    }
                    cfg.map.pieces.push_back(std::move(piece));
                } else {
                    unknown();
                }
                break;
            case Block::analysis:
                if (key == "basis") {
                    for (const auto& ent : split(value, ";")) {
                        std::vector<std::pair<std::string, Rational>> terms;
                        for (const auto& term : split(ent, " \t,")) {
                            auto kv = split(term, ":");
                            auto r = kv.size() == 2 ? parse_rational(kv[1]) : std::nullopt;
                            if (!r || *r <= 0) problem(line_no, "malformed entourage term '" + term + "'");
                            else terms.emplace_back(kv[0], *r);
                        }
                        if (!terms.empty()) cfg.analysis.basis.push_back(std::move(terms));
                    }
                } else if (key == "probes") {
                    cfg.analysis.probes = split(value, " \t,");
                } else if (key == "sequentially-complete" || key == "property-star") {
                    auto b = parse_bool(value);
                    if (!b) problem(line_no, "'" + std::string(value) + "' is not a boolean");
                    (key == "property-star" ? cfg.analysis.property_star : cfg.analysis.sequentially_complete) = b;
                } else if (key == "max-iter" || key == "window") {
                    auto n = parse_count(value);
                    if (!n) problem(line_no, "'" + std::string(value) + "' is not a positive integer");
                    (key == "window" ? cfg.analysis.window : cfg.analysis.max_iter) = n;
                } else if (key == "eps") {
                    auto r = parse_rational(value);
                    if (!r || *r <= 0) problem(line_no, "eps must be a positive number");
                    else cfg.analysis.eps = *r;
                } else {
                    unknown();
                }
                break;
        }
    }

    // cross-references
    if (cfg.carrier.kind.empty()) problems.push_back(source + ": [carrier] kind is required");
    if (cfg.pseudometrics.empty()) problems.push_back(source + ": at least one [pseudometric] block is required");
    const bool finite = cfg.carrier.kind == "finite";
    const bool real = cfg.carrier.kind == "real-line";
    std::set<std::string> labels;
    if (finite) {
        if (cfg.carrier.labels.empty()) problems.push_back(source + ": finite carrier needs labels");
        for (const auto& l : cfg.carrier.labels)
            if (!labels.insert(l).second) problems.push_back(source + ": duplicate label '" + l + "'");
        if (!cfg.carrier.coordinates.empty() && cfg.carrier.coordinates.size() != cfg.carrier.labels.size())
            problems.push_back(source + ": coordinates must match labels one to one");
        if (cfg.carrier.domain || !cfg.carrier.grid.empty())
            problems.push_back(source + ": domain and grid apply to real-line carriers only");
        for (const auto& pm : cfg.pseudometrics) {
            if (pm.from_coordinates && cfg.carrier.coordinates.empty())
                problems.push_back(source + ": pseudometric '" + pm.id + "' needs carrier coordinates");
            if (pm.from_coordinates && !pm.rows.empty())
                problems.push_back(source + ": pseudometric '" + pm.id + "' has both rows and from");
            if (!pm.from_coordinates && pm.rows.empty())
                problems.push_back(source + ": pseudometric '" + pm.id + "' has no rows");
            if (pm.scale <= 0) problems.push_back(source + ": pseudometric '" + pm.id + "' scale must be positive");
        }
        for (const auto& [a, b] : cfg.graph.edges)
            for (const auto& l : {a, b})
                if (!labels.count(l)) problems.push_back(source + ": edge endpoint '" + l + "' is not a label");
        if (cfg.graph.region || !cfg.graph.exclude.empty())
            problems.push_back(source + ": region and exclude apply to real-line graphs only");
        if (!cfg.map.pieces.empty()) problems.push_back(source + ": pieces apply to real-line carriers only");
        std::set<std::string> assigned;
        for (const auto& [a, b] : cfg.map.assign) {
            if (!labels.count(a)) problems.push_back(source + ": map assigns unknown label '" + a + "'");
            if (!labels.count(b)) problems.push_back(source + ": map sends '" + a + "' to unknown label '" + b + "'");
            if (!assigned.insert(a).second) problems.push_back(source + ": map assigns '" + a + "' twice");
        }
        for (const auto& l : cfg.carrier.labels)
            if (!assigned.count(l)) problems.push_back(source + ": map leaves '" + l + "' unassigned");
        for (const auto& p : cfg.analysis.probes)
            if (!labels.count(p)) problems.push_back(source + ": probe '" + p + "' is not a label");
    }
    if (real) {
        if (!cfg.carrier.labels.empty() || !cfg.carrier.coordinates.empty())
            problems.push_back(source + ": labels and coordinates apply to finite carriers only");
        if (!cfg.carrier.domain) problems.push_back(source + ": real-line carrier needs a domain");
        for (const auto& pm : cfg.pseudometrics)
            if (!pm.rows.empty() || pm.from_coordinates)
                problems.push_back(source + ": real-line pseudometric '" + pm.id + "' takes only a scale");
        if (cfg.graph.kind == "explicit") problems.push_back(source + ": real-line graphs need a predicate kind");
        if (!cfg.graph.edges.empty()) problems.push_back(source + ": explicit edges apply to finite carriers only");
        if (!cfg.map.assign.empty()) problems.push_back(source + ": assignments apply to finite carriers only");
        if (cfg.map.pieces.empty()) problems.push_back(source + ": real-line map needs pieces");
        for (const auto& p : cfg.analysis.probes)
            if (!parse_rational(p)) problems.push_back(source + ": probe '" + p + "' is not a number");
    }
    std::set<std::string> ids;
    for (const auto& pm : cfg.pseudometrics) ids.insert(pm.id);
    for (const auto& ent : cfg.analysis.basis)
        for (const auto& [id, r] : ent)
            if (!ids.count(id)) problems.push_back(source + ": basis refers to unknown pseudometric '" + id + "'");

    if (!problems.empty()) throw ConfigError(problems);
    return cfg;
}

inline SpaceConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({path + ": cannot open file"});
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

/// Canonical text; parse_config_text(to_text(c)) == c.
inline std::string to_text(const SpaceConfig& cfg) {
    using config_detail::interval_text;
    std::ostringstream out;
    auto join = [](const auto& xs, auto f) {
        std::string s;
        for (const auto& x : xs) {
            if (!s.empty()) s += " ";
            s += f(x);
        }
        return s;
    };
    auto num = [](const Rational& r) { return to_string(r); };
    auto ident = [](const std::string& s) { return s; };
    auto arrow = [](const std::pair<std::string, std::string>& e) { return e.first + "->" + e.second; };

    if (!cfg.name.empty() || !cfg.description.empty()) {
        out << "[meta]\n";
        if (!cfg.name.empty()) out << "name = " << cfg.name << "\n";
        if (!cfg.description.empty()) out << "description = " << cfg.description << "\n";
        out << "\n";
    }
    out << "[carrier]\nkind = " << cfg.carrier.kind << "\n";
    if (!cfg.carrier.labels.empty()) out << "labels = " << join(cfg.carrier.labels, ident) << "\n";
    if (!cfg.carrier.coordinates.empty()) out << "coordinates = " << join(cfg.carrier.coordinates, num) << "\n";
    if (cfg.carrier.domain) out << "domain = " << interval_text(*cfg.carrier.domain) << "\n";
    if (!cfg.carrier.grid.empty()) out << "grid = " << join(cfg.carrier.grid, num) << "\n";
    for (const auto& pm : cfg.pseudometrics) {
        out << "\n[pseudometric " << pm.id << "]\n";
        if (pm.from_coordinates) out << "from = coordinates\n";
        for (const auto& row : pm.rows) out << "row = " << join(row, num) << "\n";
        if (pm.scale != 1) out << "scale = " << num(pm.scale) << "\n";
    }
    out << "\n[graph]\nkind = " << cfg.graph.kind << "\n";
    if (!cfg.graph.edges.empty()) out << "edges = " << join(cfg.graph.edges, arrow) << "\n";
    if (cfg.graph.region) out << "region = " << interval_text(*cfg.graph.region) << "\n";
    if (!cfg.graph.exclude.empty()) out << "exclude = " << join(cfg.graph.exclude, num) << "\n";
    out << "\n[map]\n";
    if (!cfg.map.assign.empty()) out << "assign = " << join(cfg.map.assign, arrow) << "\n";
    for (const auto& p : cfg.map.pieces) {
        out << "piece = " << interval_text(p.domain) << " slope=" << num(p.slope) << " intercept=" << num(p.intercept);
        if (p.quadratic != 0) out << " quadratic=" << num(p.quadratic);
        out << "\n";
    }
    const auto& a = cfg.analysis;
    out << "\n[analysis]\n";
    if (!a.basis.empty()) {
        std::string s;
        for (const auto& ent : a.basis) {
            if (!s.empty()) s += " ; ";
            std::string terms;
            for (const auto& [id, r] : ent) {
                if (!terms.empty()) terms += ",";
                terms += id + ":" + num(r);
            }
            s += terms;
        }
        out << "basis = " << s << "\n";
    }
    if (!a.probes.empty()) out << "probes = " << join(a.probes, ident) << "\n";
    if (a.sequentially_complete) out << "sequentially-complete = " << (*a.sequentially_complete ? "true" : "false") << "\n";
    if (a.property_star) out << "property-star = " << (*a.property_star ? "true" : "false") << "\n";
    if (a.max_iter) out << "max-iter = " << *a.max_iter << "\n";
    if (a.window) out << "window = " << *a.window << "\n";
    if (a.eps) out << "eps = " << num(*a.eps) << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Built problems

struct FiniteProblem {
    FiniteSpace space;
    FiniteGraph graph;
    TableMap map;
    std::vector<BasicEntourage> basis;
    std::vector<std::size_t> probes;
    std::size_t loops_added = 0;
};

struct RealProblem {
    RealLineSpace space;
    RealLineGraph graph;
    PiecewiseMap map;
    std::vector<BasicEntourage> basis;
    std::vector<double> probes;
    bool sequentially_complete = true;
    bool property_star = false;
};

struct Problem {
    std::string name;
    std::variant<FiniteProblem, RealProblem> body;
    std::vector<std::string> notices;

    bool finite() const { return std::holds_alternative<FiniteProblem>(body); }
};

namespace config_detail {

inline RelationKind relation_kind(const std::string& kind) {
    if (kind == "complete") return RelationKind::complete;
    if (kind == "order-leq") return RelationKind::order_leq;
    if (kind == "order-geq") return RelationKind::order_geq;
    if (kind == "order-comparable") return RelationKind::order_comparable;
    return RelationKind::diagonal;
}

}  // namespace config_detail

/// Builds the space, graph and map; all semantic problems are collected.
inline Problem build_problem(const SpaceConfig& cfg) {
    using namespace config_detail;
    std::vector<std::string> problems;
    Problem out;
    out.name = cfg.name;

    auto basis_of = [&](const auto& space) {
        std::vector<BasicEntourage> basis;
        for (const auto& ent : cfg.analysis.basis) {
            std::vector<std::pair<std::string, double>> terms;
            for (const auto& [id, r] : ent) terms.emplace_back(id, to_double(r));
            basis.push_back(BasicEntourage::make(space, terms));
        }
        if (basis.empty()) basis = default_basis(space);
        return basis;
    };

    if (cfg.carrier.kind == "finite") {
        FiniteProblem fp;
        FiniteCarrier carrier{cfg.carrier.labels, {}};
        for (const auto& c : cfg.carrier.coordinates) carrier.coordinates.push_back(to_double(c));
        const std::size_t n = carrier.size();
        std::vector<std::pair<std::string, std::vector<std::vector<Rational>>>> tables;
        for (const auto& pm : cfg.pseudometrics) {
            std::vector<std::vector<Rational>> rows = pm.rows;
            if (pm.from_coordinates) {
                rows.assign(n, std::vector<Rational>(n));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        rows[i][j] = pm.scale * abs(cfg.carrier.coordinates[i] - cfg.carrier.coordinates[j]);
            } else if (pm.scale != 1) {
                for (auto& row : rows)
                    for (auto& v : row) v *= pm.scale;
            }
            tables.emplace_back(pm.id, std::move(rows));
        }
        try {
            fp.space = FiniteSpace::create(carrier, tables);
        } catch (const ConfigError& e) {
            problems.insert(problems.end(), e.diagnostics().begin(), e.diagnostics().end());
        }
        const std::string& kind = cfg.graph.kind;
        if (kind == "explicit") {
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (const auto& [a, b] : cfg.graph.edges) edges.emplace_back(carrier.index_of(a), carrier.index_of(b));
            fp.graph = FiniteGraph::from_edges(n, edges, &fp.loops_added);
            if (fp.loops_added > 0)
                out.notices.push_back("inserted " + std::to_string(fp.loops_added) + " missing loop(s)");
        } else {
            if (!cfg.graph.edges.empty()) problems.push_back("graph kind '" + kind + "' takes no explicit edges");
            const bool ordered = kind == "order-leq" || kind == "order-geq" || kind == "order-comparable";
            if (ordered && cfg.carrier.coordinates.empty())
                problems.push_back("order graphs on finite carriers need coordinates");
            const auto& c = cfg.carrier.coordinates;
            fp.graph = FiniteGraph::from_relation(n, [&](std::size_t x, std::size_t y) {
                if (kind == "complete") return true;
                if (kind == "diagonal-only" || c.empty()) return false;
                if (kind == "order-leq") return c[x] <= c[y];
                if (kind == "order-geq") return c[x] >= c[y];
                return true;  // any two reals are comparable
            });
        }
        std::vector<std::size_t> image(n, 0);
        for (const auto& [a, b] : cfg.map.assign) image[carrier.index_of(a)] = carrier.index_of(b);
        fp.map = TableMap(std::move(image));
        for (const auto& p : cfg.analysis.probes) fp.probes.push_back(carrier.index_of(p));
        if (!problems.empty()) throw ConfigError(problems);
        fp.basis = basis_of(fp.space);
        if (cfg.analysis.property_star)
            out.notices.push_back("property-star flag ignored: decided exactly on finite carriers");
        out.body = std::move(fp);
        return out;
    }

    RealProblem rp;
    std::vector<ScaledAbsPseudometric> members;
    for (const auto& pm : cfg.pseudometrics) members.push_back({pm.id, pm.scale});
    const Interval domain = cfg.carrier.domain.value_or(Interval::all());
    try {
        rp.space = RealLineSpace::create(domain, cfg.carrier.grid, members);
    } catch (const ConfigError& e) {
        problems.insert(problems.end(), e.diagnostics().begin(), e.diagnostics().end());
    }
    try {
        rp.map = PiecewiseMap::create(domain, cfg.map.pieces);
        // the map must send the domain into itself
        RealSet image;
        for (const auto& p : rp.map.pieces()) {
            if (p.affine()) {
                image = unite(image, affine_image(RealSet(p.domain), p.slope, p.intercept));
            } else {
                for (const auto& g : cfg.carrier.grid)
                    if (p.domain.contains(g)) image = unite(image, RealSet(Interval::point(p.value(g))));
            }
        }
        RealSet outside = subtract(image, RealSet(domain));
        if (!outside.empty()) problems.push_back("map sends points outside the domain: " + outside.to_string());
        for (const auto& p : rp.map.pieces())
            if (!p.affine()) out.notices.push_back("quadratic piece on " + p.domain.to_string() +
                                                   ": domain invariance checked on the grid only");
    } catch (const ConfigError& e) {
        problems.insert(problems.end(), e.diagnostics().begin(), e.diagnostics().end());
    }
    const RelationKind kind = relation_kind(cfg.graph.kind);
    RealSet region = cfg.graph.region ? RealSet(*cfg.graph.region) : RealSet(domain);
    if (kind == RelationKind::diagonal) region = RealSet();
    region = subtract(region, RealSet::points(cfg.graph.exclude));
    rp.graph = RealLineGraph(kind, region);
    for (const auto& p : cfg.analysis.probes) {
        auto r = parse_rational(p);
        if (r && !domain.contains(*r)) problems.push_back("probe " + p + " lies outside the domain");
        if (r) rp.probes.push_back(to_double(*r));
    }
    rp.sequentially_complete = cfg.analysis.sequentially_complete.value_or(true);
    rp.property_star = cfg.analysis.property_star.value_or(false);
    if (!problems.empty()) throw ConfigError(problems);
    rp.basis = basis_of(rp.space);
    out.body = std::move(rp);
    return out;
}

/// FNV-1a over the text, as 16 hex digits.
inline std::string config_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return out;
}

}  // namespace gcontract
