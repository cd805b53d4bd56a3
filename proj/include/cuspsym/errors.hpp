#pragma once

#include <stdexcept>
#include <string>

namespace cuspsym {

// Malformed or out-of-contract input. The CLI maps this to exit code 1.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A search or enumeration hit its configured budget or length bound.
// Distinct from a negative verdict; the CLI maps this to exit code 2.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cuspsym
