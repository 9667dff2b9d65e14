#pragma once

// Structured reports (JSON) and their text rendering.

#include "gcontract/classify.hpp"
#include "gcontract/config.hpp"
#include "gcontract/continuity.hpp"
#include "gcontract/contraction.hpp"
#include "gcontract/convergence.hpp"
#include "gcontract/oracle.hpp"
#include "gcontract/verdict.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>
#include <string>

namespace gcontract {

inline constexpr const char* version_string = "0.1.0";

using Json = nlohmann::ordered_json;

/// Non-finite doubles become strings so the document stays valid JSON.
inline Json number_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline Json to_json(const Tristate& t) {
    Json j;
    j["value"] = to_string(t.value);
    j["provenance"] = t.provenance;
    j["heuristic"] = t.heuristic;
    if (t.is_violated()) j["witness"] = t.witness;
    return j;
}

inline Json to_json(const ContractionVerdict& v) {
    Json j;
    j["is-contraction"] = v.is_contraction;
    j["preserves-edges"] = v.preserves_edges;
    if (!v.unpreserved_edge.empty()) j["unpreserved-edge"] = v.unpreserved_edge;
    j["alpha-star"] = v.alpha_star_unbounded ? Json("unbounded") : number_json(v.alpha_star);
    if (v.alpha_star_exact) j["alpha-star-exact"] = to_string(*v.alpha_star_exact);
    j["alpha-star-vacuous"] = v.alpha_star_vacuous;
    if (!v.stretch_witness.empty()) j["stretch-witness"] = v.stretch_witness;
    j["zero-edge-ok"] = v.zero_edge_ok;
    if (!v.zero_edge_witness.empty()) j["zero-edge-witness"] = v.zero_edge_witness;
    j["near-miss"] = v.near_miss;
    j["trivial-graph"] = v.trivial_graph;
    j["heuristic"] = v.heuristic;
    j["witnesses"] = v.witnesses();
    return j;
}

inline Json to_json(const ContinuityProfile& p) {
    Json j;
    j["continuous"] = to_json(p.continuous);
    j["orbitally-continuous"] = to_json(p.orbitally_continuous);
    j["orbitally-g-continuous"] = to_json(p.orbitally_g_continuous);
    j["nonexpansive"] = to_json(p.nonexpansive);
    j["equicontinuous-powers"] = to_json(p.equicontinuous_powers);
    j["property-star"] = to_json(p.property_star);
    return j;
}

inline Json to_json(const ClassificationReport& r) {
    Json j;
    j["fixed-points"] = r.fixed_points;
    j["fixed-point-count"] = r.fixed_point_count ? Json(*r.fixed_point_count) : Json("continuum");
    j["x-t"] = r.x_t;
    j["x-t-empty"] = r.x_t_empty;
    j["components-meeting-x-t"] = r.components_meeting_x_t;
    if (r.cardinality_check) j["cardinality-check"] = *r.cardinality_check;
    j["weakly-connected"] = r.weakly_connected;
    j["picard"] = to_json(r.picard);
    if (r.picard_limit) j["picard-limit"] = *r.picard_limit;
    j["weakly-picard"] = to_json(r.weakly_picard);
    Json restricted = Json::array();
    for (const auto& c : r.restricted) {
        Json e;
        e["component"] = c.component;
        e["start"] = c.start;
        e["picard"] = to_json(c.picard);
        if (c.limit) e["limit"] = *c.limit;
        restricted.push_back(std::move(e));
    }
    j["restricted"] = std::move(restricted);
    j["route"] = r.route;
    j["empirical"] = r.empirical;
    j["notes"] = r.notes;
    j["heuristic"] = r.heuristic;
    return j;
}

inline Json to_json(const TheoremVerdict& v) {
    Json j;
    j["theorem"] = v.theorem;
    j["holds"] = v.holds;
    j["maps-enumerated"] = v.maps_enumerated;
    j["contractions-found"] = v.contractions_found;
    Json checks = Json::object();
    for (const auto& [name, ok] : v.checks) checks[name] = ok;
    j["checks"] = std::move(checks);
    if (v.counterexample) {
        Json c;
        c["map-index"] = v.counterexample->map_index;
        c["map"] = v.counterexample->map.image();
        c["details"] = v.counterexample->details;
        j["counterexample"] = std::move(c);
    }
    j["notes"] = v.notes;
    return j;
}

/// Flattens the document into "path: value" lines, one per leaf.
inline void render_text(const Json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        if (j.empty()) out << prefix << ": {}\n";
        for (const auto& [key, value] : j.items()) render_text(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (j.is_array()) {
        if (j.empty()) out << prefix << ": []\n";
        std::size_t i = 0;
        for (const auto& value : j) render_text(value, prefix + "[" + std::to_string(i++) + "]", out);
    } else if (j.is_string()) {
        out << prefix << ": " << j.get<std::string>() << "\n";
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

inline std::string render_text(const Json& j) {
    std::ostringstream out;
    render_text(j, "", out);
    return out.str();
}

}  // namespace gcontract
