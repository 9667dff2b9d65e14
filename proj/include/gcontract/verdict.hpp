#pragma once

#include <string>

namespace gcontract {

enum class Truth { holds, violated, not_determined };

inline std::string to_string(Truth t) {
    switch (t) {
        case Truth::holds: return "holds";
        case Truth::violated: return "violated";
        case Truth::not_determined: return "not-determined";
    }
    return "unknown";
}

/// A three-valued verdict with its justification.
struct Tristate {
    Truth value = Truth::not_determined;
    std::string witness;     // set when violated
    std::string provenance;  // how the verdict was reached
    bool heuristic = false;  // relies on sampled probes rather than exact reasoning

    static Tristate holds(std::string provenance, bool heuristic = false) {
        return {Truth::holds, {}, std::move(provenance), heuristic};
    }
    static Tristate violated(std::string witness, std::string provenance, bool heuristic = false) {
        return {Truth::violated, std::move(witness), std::move(provenance), heuristic};
    }
    static Tristate unknown(std::string provenance, bool heuristic = false) {
        return {Truth::not_determined, {}, std::move(provenance), heuristic};
    }

    bool is_holds() const { return value == Truth::holds; }
    bool is_violated() const { return value == Truth::violated; }
};

}  // namespace gcontract
