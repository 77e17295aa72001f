#ifndef SYMBREAK_COMMON_HPP
#define SYMBREAK_COMMON_HPP

#include <stdexcept>
#include <string>

namespace symbreak {

/// Malformed input to a library operation (bad digits, length mismatch, ...).
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A search exceeded its configured node budget.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A brute-force oracle refused an instance above its size guard.
struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// An unparsable or inconsistent run configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace symbreak

#endif
