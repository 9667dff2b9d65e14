#pragma once

// Cauchy detection, Cauchy equivalence and the path-weight bound.

#include "gcontract/errors.hpp"
#include "gcontract/graph.hpp"
#include "gcontract/maps.hpp"
#include "gcontract/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gcontract {

struct CauchyResult {
    bool cauchy = false;
    std::size_t index = 0;  // least N found; meaningful when cauchy
    std::string detail;      // reason when not cauchy
};

// ---------------------------------------------------------------------------
// Finite carriers: an orbit is Cauchy for the whole uniformity iff its tail
// stays inside one zero-distance class. Basis radii play no role.

inline CauchyResult detect_cauchy(const FiniteSpace& space, const Orbit<std::size_t>& o) {
    if (!o.extendable()) return {false, 0, "orbit did not close within the budget"};
    const std::size_t end = o.cycle_start + o.cycle_length;
    for (std::size_t a = o.cycle_start; a < end; ++a)
        for (std::size_t b = o.cycle_start; b < end; ++b)
            if (!space.indistinguishable(o.values[a], o.values[b]))
                return {false, 0, "orbit cycles through distinguishable points"};
    std::size_t n = o.cycle_start;
    while (n > 0 && space.indistinguishable(o.values[n - 1], o.values[o.cycle_start])) --n;
    return {true, n, {}};
}

/// Both Cauchy and eventually indistinguishable from each other.
inline bool cauchy_equivalent(const FiniteSpace& space, const Orbit<std::size_t>& a, const Orbit<std::size_t>& b) {
    if (!detect_cauchy(space, a).cauchy || !detect_cauchy(space, b).cauchy) return false;
    const std::size_t n = std::max(a.cycle_start, b.cycle_start);
    return space.indistinguishable(*a.at(n), *b.at(n));
}

// ---------------------------------------------------------------------------
// Numeric orbits

namespace detail {

template <PseudometricSpace S>
bool window_inside(const S& space, std::span<const double> values, const std::vector<BasicEntourage>& basis) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    // all supported real-line pseudometrics grow with |x - y|, so the extreme
    // pair decides every pair of the window
    for (const auto& v : basis)
        if (!contains(space, v, *lo, *hi)) return false;
    return true;
}

}  // namespace detail

/// Stop rule: the last window + 1 values lie pairwise inside every probe entourage.
class ConvergenceWindow {
public:
    ConvergenceWindow(const RealLineSpace& space, std::vector<BasicEntourage> probes, std::size_t window)
        : space_(&space), probes_(std::move(probes)), window_(window) {
        if (window_ < 1) throw PreconditionError("convergence window must be at least 1");
        if (probes_.empty()) throw PreconditionError("convergence window needs probe entourages");
    }

    bool operator()(std::span<const double> values) const {
        if (values.size() < window_ + 1) return false;
        auto tail = values.subspan(values.size() - window_ - 1);
        if (!std::all_of(tail.begin(), tail.end(), [](double v) { return std::isfinite(v); })) return false;
        return detail::window_inside(*space_, tail, probes_);
    }

private:
    const RealLineSpace* space_;
    std::vector<BasicEntourage> probes_;
    std::size_t window_;
};

/// Probe entourages: the basis with every radius multiplied by eps.
inline std::vector<BasicEntourage> probe_entourages(const std::vector<BasicEntourage>& basis, double eps) {
    std::vector<BasicEntourage> out;
    for (const auto& v : basis) out.push_back(scale(v, eps));
    return out;
}

/// Least N such that all recorded x_n, x_m with N <= n, m <= N + window lie
/// pairwise inside every basis entourage.
inline CauchyResult detect_cauchy(const RealLineSpace& space, const Orbit<double>& o,
                                  const std::vector<BasicEntourage>& basis, std::size_t window) {
    if (basis.empty()) throw PreconditionError("detect_cauchy needs a nonempty basis");
    if (o.status == OrbitStatus::diverged) return {false, 0, "orbit diverged"};
    const std::size_t horizon = o.horizon(o.values.size() + window + 1);
    std::vector<double> values;
    for (std::size_t n = 0; n < horizon; ++n) values.push_back(*o.at(n));
    for (std::size_t n = 0; n + window < values.size(); ++n) {
        std::span<const double> w(values.data() + n, window + 1);
        if (detail::window_inside(space, w, basis)) return {true, n, {}};
    }
    return {false, 0, "not within budget"};
}

/// Both orbits Cauchy and, for every basis entourage, (a_n, b_n) inside it from
/// some N on, with at least `window` recorded indices after N.
inline bool cauchy_equivalent(const RealLineSpace& space, const Orbit<double>& a, const Orbit<double>& b,
                              const std::vector<BasicEntourage>& basis, std::size_t window) {
    if (!detect_cauchy(space, a, basis, window).cauchy || !detect_cauchy(space, b, basis, window).cauchy) return false;
    const std::size_t wanted = std::max(a.values.size(), b.values.size()) + window;
    const std::size_t horizon = std::min(a.horizon(wanted), b.horizon(wanted));
    for (const auto& v : basis) {
        std::size_t n = horizon;
        while (n > 0 && contains(space, v, *a.at(n - 1), *b.at(n - 1))) --n;
        if (horizon - n < window) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Path-weight bound: for a path x_0 .. x_N in the undirected closure,
// (T^n x_0, T^n x_N) lies in alpha^n * r * V with r the sum of the per-edge
// scale factors.

struct PathBound {
    double r = 0;
    bool member = false;
    std::vector<double> lambdas;
};

inline constexpr double path_bound_tiny = 1e-12;

inline std::size_t iterate(const TableMap& map, std::size_t x, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) x = map(x);
    return x;
}

inline PathBound path_weight_bound(const FiniteSpace& space, const FiniteGraph& graph, const TableMap& map,
                                   const Path& path, const BasicEntourage& v, std::size_t n, double alpha,
                                   double slack = 1e-9) {
    if (!(alpha > 0) || !(alpha < 1)) throw PreconditionError("path bound needs a contraction constant in (0,1)");
    if (!is_path(graph.undirected_closure(), path)) throw InputError("not a path of the undirected closure");
    PathBound out;
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        const double lambda =
            std::max(lambda_infimum(space, v, path.vertices[i - 1], path.vertices[i]), path_bound_tiny) * (1 + slack);
        out.lambdas.push_back(lambda);
        out.r += lambda;
    }
    out.r = std::max(out.r, path_bound_tiny);
    const std::size_t x = iterate(map, path.vertices.front(), n);
    const std::size_t y = iterate(map, path.vertices.back(), n);
    out.member = contains(space, scale(v, std::pow(alpha, static_cast<double>(n)) * out.r), x, y);
    return out;
}

/// sum_{n >= 1} alpha^n r.
inline double geometric_tail_bound(double alpha, double r) {
    if (!(alpha > 0) || !(alpha < 1)) throw PreconditionError("geometric tail needs alpha in (0,1)");
    return alpha * r / (1 - alpha);
}

inline double geometric_partial_sum(double alpha, double r, std::size_t terms) {
    double sum = 0, term = r;
    for (std::size_t n = 1; n <= terms; ++n) {
        term *= alpha;
        sum += term;
    }
    return sum;
}

}  // namespace gcontract
