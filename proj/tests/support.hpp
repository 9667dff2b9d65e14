#pragma once

#include "gcontract/bundled_configs.hpp"
#include "gcontract/config.hpp"
#include "gcontract/oracle.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing_support {

using namespace gcontract;

inline std::string bundled_text(std::string_view name) {
    for (const auto& [stem, text] : bundled::configs)
        if (stem == name) return std::string(text);
    throw std::runtime_error("no bundled config " + std::string(name));
}

inline Problem bundled(std::string_view name) { return build_problem(parse_config_text(bundled_text(name))); }

inline FiniteProblem bundled_finite(std::string_view name) { return std::get<FiniteProblem>(bundled(name).body); }

inline RealProblem bundled_real(std::string_view name) { return std::get<RealProblem>(bundled(name).body); }

inline std::vector<std::string> bundled_finite_names() {
    std::vector<std::string> out;
    for (const auto& [stem, text] : bundled::configs)
        if (bundled(stem).finite()) out.emplace_back(stem);
    return out;
}

inline std::vector<std::string> labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

inline FiniteSpace table_space(const std::vector<std::vector<Rational>>& rows) {
    return FiniteSpace::create({labels(rows.size()), {}}, {{"d", rows}});
}

// Generators. Pseudometrics come from points in a small integer lattice under
// the l1 distance, so they are valid by construction; a zero coordinate vector
// shared by two points makes the family non-separating.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

    std::vector<std::vector<Rational>> lattice_table(std::size_t n, std::size_t dims, int spread) {
        std::vector<std::vector<int>> pts(n, std::vector<int>(dims));
        for (auto& p : pts)
            for (auto& c : p) c = static_cast<int>(below(static_cast<std::size_t>(spread) + 1));
        std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                int d = 0;
                for (std::size_t k = 0; k < dims; ++k) d += std::abs(pts[i][k] - pts[j][k]);
                rows[i][j] = Rational(d, 2);
            }
        return rows;
    }

    FiniteSpace space(std::size_t n, std::size_t members, bool separated) {
        std::vector<std::pair<std::string, std::vector<std::vector<Rational>>>> tables;
        for (;;) {
            tables.clear();
            for (std::size_t k = 0; k < members; ++k)
                tables.emplace_back("p" + std::to_string(k), lattice_table(n, 2, 3));
            auto s = FiniteSpace::create({labels(n), {}}, tables);
            if (!separated || s.separating()) return s;
        }
    }

    FiniteGraph graph(std::size_t n, double density) {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (x != y && coin(density)) edges.emplace_back(x, y);
        return FiniteGraph::from_edges(n, edges);
    }

    TableMap map(std::size_t n) {
        std::vector<std::size_t> img(n);
        for (auto& v : img) v = below(n);
        return TableMap(img);
    }

    Rational rational(int span, int den) {
        const auto num = static_cast<long>(below(static_cast<std::size_t>(2 * span * den + 1))) - span * den;
        return Rational(num, den);
    }
};

}  // namespace testing_support
