#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

// Raised when p-adic cancellation eats every significant digit, or when a
// digit beyond the tracked precision window is requested.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid mathematical input: composite p, zero denominator, p = 2 where the
// machinery is odd-p only, degenerate Gram matrix, and the like.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured search or enumeration budget was exhausted before an answer
// could be certified (residue search depth, unit-group modulus, panel count).
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qgraph
