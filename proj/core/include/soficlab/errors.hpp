#ifndef SOFICLAB_ERRORS_HPP
#define SOFICLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace soficlab {

/// Malformed or mutually inconsistent inputs (bad word text, carrier
/// mismatch, unknown generator, unparsable config, ...).
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive enumeration or symbolic expansion would exceed the
/// configured candidate budget.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested construction has no solution for the given parameters
/// (e.g. a tower that is too shallow for the requested entropy bound).
class InfeasibleError : public std::runtime_error {
public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Process exit codes used by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInfeasible = 4;

} // namespace soficlab

#endif
