#pragma once

#include <stdexcept>
#include <string>

namespace leosim {

// Invariant violation in a user-supplied value. Message names the bound.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Torus too small for four distinct neighbors.
class TopologyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input outside an equation's domain (non-positive sizes, rho < 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inconsistent model configuration, e.g. d_max <= d_min in the loss law.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No delivered update within the horizon, so the age process is undefined.
class UndefinedAgeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace leosim
