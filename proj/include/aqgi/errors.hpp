#pragma once

#include <stdexcept>
#include <string>

namespace aqgi {

// Bad user-supplied data (malformed files, out-of-range vertices, ...).
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a configured enumeration/qubit/ancilla limit.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to converge or lost too much accuracy.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition between modules was violated (e.g. decoding a nonzero-cost
// ground set as isomorphisms).
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace aqgi
