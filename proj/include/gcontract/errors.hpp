#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcontract {

/// Bad argument to a library call: unknown label, point outside the domain,
/// malformed entourage.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point falls outside every piece of a piecewise map.
class DomainError : public InputError {
public:
    using InputError::InputError;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A verdict licensed by a theorem route disagrees with an observed orbit.
/// This always indicates a bug and is never swallowed.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Enumeration refused because the instance exceeds the configured budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Command is not available for this kind of carrier.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration rejected. Carries every diagnostic found, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> diagnostics)
        : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

private:
    static std::string join(const std::vector<std::string>& lines) {
        std::string out = "configuration rejected";
        for (const auto& line : lines) {
            out += "\n  ";
            out += line;
        }
        return out;
    }

    std::vector<std::string> diagnostics_;
};

}  // namespace gcontract
