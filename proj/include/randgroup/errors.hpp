// errors.hpp -- library-specific error types
//
// Invalid arguments raise std::invalid_argument. The two classes below mark
// failures a caller may want to catch separately: a result too large to
// materialize, and a computation that would exceed a hard enumeration budget.

#pragma once

#include <stdexcept>
#include <string>

namespace randgroup {

/// The requested quantity exceeds a hard size cap (for example a relator
/// count past 2^32). Callers map this to a distinct process exit code.
class SizeLimitError : public std::runtime_error {
public:
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested computation would enumerate more states than the configured
/// budget allows.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace randgroup
