#pragma once

#include <stdexcept>
#include <string>

namespace dynbc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A hypothesis of the chosen solution route does not hold
/// (spectral condition violated, k > 0 on the probabilistic route, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed run configuration or input file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dynbc
