#pragma once

// Directed graphs on the carrier. Every graph contains all loops.

#include "gcontract/errors.hpp"
#include "gcontract/maps.hpp"
#include "gcontract/real_set.hpp"
#include "gcontract/space.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gcontract {

struct Path {
    std::vector<std::size_t> vertices;

    std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

class FiniteGraph {
public:
    FiniteGraph() = default;

    /// Missing loops are inserted; their count is reported through `loops_added`.
    static FiniteGraph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                  std::size_t* loops_added = nullptr) {
        FiniteGraph g(n);
        for (auto [x, y] : edges) {
            if (x >= n || y >= n) throw InputError("edge endpoint outside the carrier");
            g.set(x, y);
        }
        std::size_t added = 0;
        for (std::size_t x = 0; x < n; ++x)
            if (!g.has_edge(x, x)) {
                g.set(x, x);
                ++added;
            }
        if (loops_added) *loops_added = added;
        return g;
    }

    static FiniteGraph diagonal(std::size_t n) { return from_edges(n, {}); }

    static FiniteGraph complete(std::size_t n) {
        FiniteGraph g(n);
        std::fill(g.adjacency_.begin(), g.adjacency_.end(), char{1});
        return g;
    }

    /// Edge (x, y) whenever `relation(x, y)`; loops always.
    template <class Relation>
    static FiniteGraph from_relation(std::size_t n, Relation relation) {
        FiniteGraph g(n);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (x == y || relation(x, y)) g.set(x, y);
        return g;
    }

    std::size_t size() const { return n_; }
    bool has_edge(std::size_t x, std::size_t y) const { return adjacency_[x * n_ + y] != 0; }

    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t y = 0; y < n_; ++y)
                if (has_edge(x, y)) out.emplace_back(x, y);
        return out;
    }

    /// Neighbors in ascending index order.
    std::vector<std::size_t> successors(std::size_t x) const {
        std::vector<std::size_t> out;
        for (std::size_t y = 0; y < n_; ++y)
            if (has_edge(x, y)) out.push_back(y);
        return out;
    }

    bool symmetric() const {
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t y = x + 1; y < n_; ++y)
                if (has_edge(x, y) != has_edge(y, x)) return false;
        return true;
    }

    /// E(G) = diagonal.
    bool trivial() const {
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t y = 0; y < n_; ++y)
                if (x != y && has_edge(x, y)) return false;
        return true;
    }

    FiniteGraph reverse() const {
        FiniteGraph g(n_);
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t y = 0; y < n_; ++y)
                if (has_edge(x, y)) g.set(y, x);
        return g;
    }

    /// E(G) union E(G)^-1.
    FiniteGraph undirected_closure() const {
        FiniteGraph g = *this;
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t y = 0; y < n_; ++y)
                if (has_edge(x, y)) g.set(y, x);
        return g;
    }

    bool operator==(const FiniteGraph&) const = default;

private:
    explicit FiniteGraph(std::size_t n) : n_(n), adjacency_(n * n, 0) {}
    void set(std::size_t x, std::size_t y) { adjacency_[x * n_ + y] = 1; }

    std::size_t n_ = 0;
    std::vector<char> adjacency_;
};

/// Component ids (numbered by first vertex) of the undirected closure.
inline std::vector<std::size_t> component_ids(const FiniteGraph& g) {
    const FiniteGraph u = g.undirected_closure();
    const std::size_t none = g.size();
    std::vector<std::size_t> id(g.size(), none);
    std::size_t next = 0;
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (id[s] != none) continue;
        std::deque<std::size_t> queue{s};
        id[s] = next;
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t y : u.successors(x))
                if (id[y] == none) {
                    id[y] = next;
                    queue.push_back(y);
                }
        }
        ++next;
    }
    return id;
}

/// [x] in a symmetric graph, ascending.
inline std::vector<std::size_t> component(const FiniteGraph& symmetric_graph, std::size_t x) {
    if (x >= symmetric_graph.size()) throw InputError("component query outside the carrier");
    if (!symmetric_graph.symmetric()) throw PreconditionError("component() expects a symmetric graph");
    auto ids = component_ids(symmetric_graph);
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < ids.size(); ++y)
        if (ids[y] == ids[x]) out.push_back(y);
    return out;
}

inline bool is_weakly_connected(const FiniteGraph& g) {
    auto ids = component_ids(g);
    return std::all_of(ids.begin(), ids.end(), [](std::size_t c) { return c == 0; });
}

/// Shortest path by edge count; ties break towards smaller indices.
inline std::optional<Path> find_path(const FiniteGraph& symmetric_graph, std::size_t x, std::size_t y) {
    const std::size_t n = symmetric_graph.size();
    if (x >= n || y >= n) throw InputError("path endpoint outside the carrier");
    if (!symmetric_graph.symmetric()) throw PreconditionError("find_path() expects a symmetric graph");
    std::vector<std::size_t> parent(n, n);
    std::vector<char> visited(n, 0);
    std::deque<std::size_t> queue{x};
    visited[x] = 1;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        if (v == y) break;
        for (std::size_t w : symmetric_graph.successors(v))
            if (!visited[w]) {
                visited[w] = 1;
                parent[w] = v;
                queue.push_back(w);
            }
    }
    if (!visited[y]) return std::nullopt;
    Path p;
    for (std::size_t v = y; v != x; v = parent[v]) p.vertices.push_back(v);
    p.vertices.push_back(x);
    std::reverse(p.vertices.begin(), p.vertices.end());
    return p;
}

inline bool is_path(const FiniteGraph& g, const Path& p) {
    if (p.vertices.empty()) return false;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        if (p.vertices[i] >= g.size()) return false;
        if (i > 0 && !g.has_edge(p.vertices[i - 1], p.vertices[i])) return false;
    }
    return true;
}

/// X_T = {x : (x, Tx) in E(G)}, ascending.
inline std::vector<std::size_t> x_t_set(const FiniteGraph& g, const TableMap& map) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < g.size(); ++x)
        if (g.has_edge(x, map(x))) out.push_back(x);
    return out;
}

// ---------------------------------------------------------------------------
// Real-line graphs given by a relation restricted to a region.
//
// (x, y) is an edge iff x == y, or both lie in the region and the relation
// holds. With region [1,4]\{5/2} and order_leq this is the interval order of
// the worked real-line example.

enum class RelationKind { diagonal, complete, order_leq, order_geq, order_comparable };

inline std::string to_string(RelationKind k) {
    switch (k) {
        case RelationKind::diagonal: return "diagonal-only";
        case RelationKind::complete: return "complete";
        case RelationKind::order_leq: return "order-leq";
        case RelationKind::order_geq: return "order-geq";
        case RelationKind::order_comparable: return "order-comparable";
    }
    return "unknown";
}

class RealLineGraph {
public:
    RealLineGraph() = default;
    RealLineGraph(RelationKind kind, RealSet region) : kind_(kind), region_(std::move(region)) {}

    RelationKind kind() const { return kind_; }
    const RealSet& region() const { return region_; }

    bool relation(const Rational& x, const Rational& y) const {
        switch (kind_) {
            case RelationKind::diagonal: return false;
            case RelationKind::complete:
            case RelationKind::order_comparable: return true;
            case RelationKind::order_leq: return x <= y;
            case RelationKind::order_geq: return x >= y;
        }
        return false;
    }

    bool has_edge(const Rational& x, const Rational& y) const {
        if (x == y) return true;
        return kind_ != RelationKind::diagonal && region_.contains(x) && region_.contains(y) && relation(x, y);
    }

    bool has_edge(double x, double y) const {
        if (x == y) return true;
        if (!std::isfinite(x) || !std::isfinite(y)) return false;
        return has_edge(from_double(x), from_double(y));
    }

    bool symmetric() const { return kind_ != RelationKind::order_leq && kind_ != RelationKind::order_geq; }
    bool trivial() const { return kind_ == RelationKind::diagonal || !region_.has_two_points(); }

    RealLineGraph reverse() const {
        RelationKind k = kind_;
        if (k == RelationKind::order_leq) k = RelationKind::order_geq;
        else if (k == RelationKind::order_geq) k = RelationKind::order_leq;
        return {k, region_};
    }

    RealLineGraph undirected_closure() const {
        RelationKind k = symmetric() ? kind_ : RelationKind::order_comparable;
        return {k, region_};
    }

    std::string describe() const {
        if (kind_ == RelationKind::diagonal) return "diagonal-only";
        return to_string(kind_) + " on " + region_.to_string();
    }

private:
    RelationKind kind_ = RelationKind::diagonal;
    RealSet region_;
};

/// Part of the region inside the domain: the only place non-loop edges live.
inline RealSet active_region(const RealLineGraph& g, const Interval& domain) {
    return intersect(g.region(), RealSet(domain));
}

/// [x] of the undirected closure. Any two region points are comparable, so the
/// region is a single component; every other point is alone.
inline RealSet component(const RealLineGraph& g, const Interval& domain, const Rational& x) {
    if (!domain.contains(x)) throw InputError("component query outside the domain");
    RealSet active = active_region(g, domain);
    if (g.kind() == RelationKind::diagonal || !active.contains(x)) return RealSet(Interval::point(x));
    return active;
}

inline bool is_weakly_connected(const RealLineGraph& g, const Interval& domain) {
    if (g.kind() == RelationKind::diagonal) return domain.degenerate();
    return is_subset(RealSet(domain), g.region());
}

}  // namespace gcontract
