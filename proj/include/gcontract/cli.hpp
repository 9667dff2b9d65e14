#pragma once

// Command dispatch: check, iterate, classify, validate, report.
//
// Exit codes: 0 when every requested property holds (or is not determined),
// 1 when any is violated, 2 on configuration, budget or unsupported-command errors.

#include "gcontract/classify.hpp"
#include "gcontract/config.hpp"
#include "gcontract/continuity.hpp"
#include "gcontract/contraction.hpp"
#include "gcontract/convergence.hpp"
#include "gcontract/errors.hpp"
#include "gcontract/oracle.hpp"
#include "gcontract/report.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gcontract {

inline constexpr std::uint64_t default_seed = 20260101;

struct Options {
    std::string command = "report";
    std::string config_text;
    std::string config_source = "config";
    std::optional<double> alpha;
    std::optional<double> eps;
    std::optional<std::size_t> max_iter;
    std::optional<std::size_t> window;
    std::uint64_t seed = default_seed;
    std::size_t max_carrier = 4;
    bool json = false;
};

struct RunResult {
    int exit_code = 0;
    Json report;             // empty on errors
    std::string output;      // rendered report
    std::vector<std::string> errors;
};

namespace cli_detail {

struct Settings {
    double eps = 1e-6;
    std::size_t max_iter = 10000;
    std::size_t window = 16;
};

class PropertyLedger {
public:
    void record(const std::string& name, Truth value) { entries_.emplace_back(name, value); }
    void record(const std::string& name, bool value) { record(name, value ? Truth::holds : Truth::violated); }

    bool any_violated() const {
        for (const auto& [name, value] : entries_)
            if (value == Truth::violated) return true;
        return false;
    }

    Json to_json() const {
        Json j = Json::object();
        for (const auto& [name, value] : entries_) j[name] = to_string(value);
        return j;
    }

private:
    std::vector<std::pair<std::string, Truth>> entries_;
};

inline bool wants(const std::string& command, const char* section) {
    return command == "report" || command == section;
}

inline Json alpha_json(const ContractionVerdict& v, const Options& o) {
    if (!v.is_contraction) {
        if (o.alpha) return Json("rejected: not a contraction");
        return Json(nullptr);
    }
    return select_alpha(v, 1e-9, o.alpha);
}

inline Json finite_orbit_json(const FiniteSpace& space, const Orbit<std::size_t>& o) {
    Json j;
    j["start"] = space.label(o.start);
    Json values = Json::array();
    for (auto v : o.values) values.push_back(space.label(v));
    j["values"] = std::move(values);
    j["status"] = to_string(o.status);
    j["cycle-start"] = o.cycle_start;
    j["cycle-length"] = o.cycle_length;
    const auto c = detect_cauchy(space, o);
    j["cauchy"] = c.cauchy;
    if (c.cauchy) {
        j["cauchy-index"] = c.index;
        j["limit"] = space.label(o.values[o.cycle_start]);
    } else {
        j["detail"] = c.detail;
    }
    return j;
}

inline Json real_orbit_json(const ProbeOrbit& p) {
    constexpr std::size_t head = 8;
    Json j;
    j["start"] = number_json(p.start);
    Json values = Json::array();
    for (std::size_t n = 0; n < p.orbit.values.size() && n < head; ++n) values.push_back(number_json(p.orbit.values[n]));
    j["head"] = std::move(values);
    j["recorded"] = p.orbit.values.size();
    j["last"] = p.orbit.values.empty() ? Json(nullptr) : number_json(p.orbit.values.back());
    j["status"] = to_string(p.orbit.status);
    j["cauchy"] = p.cauchy.cauchy;
    if (p.cauchy.cauchy) j["cauchy-index"] = p.cauchy.index;
    else j["detail"] = p.cauchy.detail;
    if (p.limit) j["limit"] = number_json(*p.limit);
    if (p.fixed_point) j["fixed-point"] = to_string(*p.fixed_point);
    return j;
}

inline void run_finite(const FiniteProblem& fp, const std::string& name, const Options& o, const Settings& s,
                       Json& report, PropertyLedger& props) {
    const auto& space = fp.space;
    Json inst;
    inst["carrier"] = "finite";
    Json labels = Json::array();
    for (std::size_t x = 0; x < space.size(); ++x) labels.push_back(space.label(x));
    inst["labels"] = std::move(labels);
    inst["separated"] = space.separating();
    Json edges = Json::array();
    for (const auto& [x, y] : fp.graph.edges())
        if (x != y) edges.push_back(space.label(x) + "->" + space.label(y));
    inst["edges"] = std::move(edges);
    inst["map"] = describe_map(space, fp.map);
    report["instance"] = std::move(inst);

    const bool need_verdict = wants(o.command, "check") || wants(o.command, "classify");
    ContractionVerdict verdict;
    ContinuityProfile profile;
    if (need_verdict) {
        verdict = check_contraction(space, fp.graph, fp.map);
        profile = continuity_profile(space, fp.graph, fp.map);
    }
    if (wants(o.command, "check")) {
        Json c = to_json(verdict);
        c["alpha"] = alpha_json(verdict, o);
        report["contraction"] = std::move(c);
        report["continuity"] = to_json(profile);
        props.record("is-contraction", verdict.is_contraction);
    }
    if (wants(o.command, "iterate")) {
        std::vector<std::size_t> starts = fp.probes;
        if (starts.empty())
            for (std::size_t x = 0; x < space.size(); ++x) starts.push_back(x);
        Json orbits = Json::array();
        bool all = true;
        for (auto x : starts) {
            const auto ob = orbit(fp.map, x, s.max_iter);
            all = all && detect_cauchy(space, ob).cauchy;
            orbits.push_back(finite_orbit_json(space, ob));
        }
        report["orbits"] = std::move(orbits);
        props.record("orbits-cauchy", all);
    }
    if (wants(o.command, "classify")) {
        const auto rep = classify(space, fp.graph, fp.map, verdict, profile);
        report["classification"] = to_json(rep);
        if (o.command == "classify") props.record("is-contraction", verdict.is_contraction);
        props.record("picard", rep.picard.value);
    }
    if (wants(o.command, "validate")) {
        FiniteInstance fi{name, space, fp.graph};
        EnumerationOptions eo;
        eo.max_carrier = o.max_carrier;
        PathBoundOptions pb;
        pb.seed = o.seed;
        std::vector<TheoremVerdict> verdicts = {verify_connectivity_equivalence(fi, eo), verify_b2_reduction(fi, {}, eo),
                                                verify_fixed_point_cardinality(fi, eo), verify_path_bound(fi, pb, eo),
                                                verify_edge_symmetry(fi, eo), verify_component_invariance(fi, eo)};
        Json theorems = Json::array();
        for (const auto& v : verdicts) {
            theorems.push_back(to_json(v));
            props.record(v.theorem, v.holds);
        }
        report["theorems"] = std::move(theorems);
    }
}

inline void run_real(const RealProblem& rp, const Options& o, const Settings& s, Json& report, PropertyLedger& props) {
    if (o.command == "validate")
        throw UnsupportedError("validate needs a finite carrier; real-line instances cannot be enumerated");
    Json inst;
    inst["carrier"] = "real-line";
    inst["domain"] = rp.map.domain().to_string();
    inst["graph"] = rp.graph.describe();
    Json pieces = Json::array();
    for (const auto& p : rp.map.pieces()) pieces.push_back(p.domain.to_string() + ": " + p.formula());
    inst["pieces"] = std::move(pieces);
    inst["sequentially-complete"] = rp.sequentially_complete;
    inst["property-star-declared"] = rp.property_star;
    report["instance"] = std::move(inst);

    ProbeOptions po;
    po.starts = rp.probes;
    po.budget = s.max_iter;
    po.window = s.window;
    po.eps = s.eps;
    po.sequentially_complete = rp.sequentially_complete;
    OrbitalProbeOptions opo;
    opo.starts = rp.probes;
    opo.eps = s.eps;

    const bool need_verdict = wants(o.command, "check") || wants(o.command, "classify");
    ContractionVerdict verdict;
    ContinuityProfile profile;
    if (need_verdict) {
        verdict = check_contraction(rp.space, rp.graph, rp.map);
        profile = continuity_profile(rp.space, rp.graph, rp.map, rp.property_star, opo);
    }
    if (wants(o.command, "check")) {
        Json c = to_json(verdict);
        c["alpha"] = alpha_json(verdict, o);
        report["contraction"] = std::move(c);
        report["continuity"] = to_json(profile);
        props.record("is-contraction", verdict.is_contraction);
    }
    if (wants(o.command, "iterate")) {
        const FixedPointSet fix = find_fixed_points(rp.map);
        std::vector<double> starts = rp.probes.empty() ? rp.space.grid() : rp.probes;
        Json orbits = Json::array();
        bool all = true;
        for (double x : starts) {
            const auto p = probe_orbit(rp.space, rp.map, x, rp.basis, fix, po);
            all = all && p.cauchy.cauchy;
            orbits.push_back(real_orbit_json(p));
        }
        report["orbits"] = std::move(orbits);
        props.record("orbits-cauchy", all);
    }
    if (wants(o.command, "classify")) {
        const auto rep = classify(rp.space, rp.graph, rp.map, verdict, profile, rp.basis, po);
        report["classification"] = to_json(rep);
        if (o.command == "classify") props.record("is-contraction", verdict.is_contraction);
        props.record("picard", rep.picard.value);
    }
}

}  // namespace cli_detail

inline RunResult run(const Options& o) {
    using namespace cli_detail;
    RunResult result;
    static const std::vector<std::string> commands = {"check", "iterate", "classify", "validate", "report"};
    try {
        if (std::find(commands.begin(), commands.end(), o.command) == commands.end())
            throw UnsupportedError("unknown command '" + o.command + "'");
        const SpaceConfig cfg = parse_config_text(o.config_text, o.config_source);
        const Problem problem = build_problem(cfg);
        Settings s;
        if (cfg.analysis.eps) s.eps = to_double(*cfg.analysis.eps);
        if (cfg.analysis.max_iter) s.max_iter = *cfg.analysis.max_iter;
        if (cfg.analysis.window) s.window = *cfg.analysis.window;
        if (o.eps) s.eps = *o.eps;
        if (o.max_iter) s.max_iter = *o.max_iter;
        if (o.window) s.window = *o.window;
        if (!(s.eps > 0)) throw InputError("eps must be positive");
        if (s.max_iter < 1 || s.window < 1) throw InputError("max-iter and window must be positive");
        if (o.alpha && !(*o.alpha > 0 && *o.alpha < 1)) throw InputError("alpha must lie in (0,1)");

        Json report;
        Json prov;
        prov["tool"] = "gcontract";
        prov["version"] = version_string;
        prov["config-hash"] = config_hash(o.config_text);
        prov["seed"] = o.seed;
        prov["command"] = o.command;
        report["provenance"] = std::move(prov);
        report["name"] = problem.name;
        Json params;
        params["eps"] = s.eps;
        params["max-iter"] = s.max_iter;
        params["window"] = s.window;
        params["alpha"] = o.alpha ? Json(*o.alpha) : Json(nullptr);
        params["max-carrier"] = o.max_carrier;
        params["completeness"] = "sequential";
        report["parameters"] = std::move(params);
        report["notices"] = problem.notices;

        PropertyLedger props;
        if (problem.finite()) run_finite(std::get<FiniteProblem>(problem.body), problem.name, o, s, report, props);
        else run_real(std::get<RealProblem>(problem.body), o, s, report, props);
        report["properties"] = props.to_json();
        result.exit_code = props.any_violated() ? 1 : 0;
        report["exit-code"] = result.exit_code;
        result.output = o.json ? report.dump(2) + "\n" : render_text(report);
        result.report = std::move(report);
    } catch (const ConfigError& e) {
        result.exit_code = 2;
        result.errors = e.diagnostics();
    } catch (const InputError& e) {
        result.exit_code = 2;
        result.errors = {e.what()};
    } catch (const UnsupportedError& e) {
        result.exit_code = 2;
        result.errors = {e.what()};
    } catch (const BudgetError& e) {
        result.exit_code = 2;
        result.errors = {e.what()};
    } catch (const PreconditionError& e) {
        result.exit_code = 2;
        result.errors = {e.what()};
    }
    return result;
}

}  // namespace gcontract
