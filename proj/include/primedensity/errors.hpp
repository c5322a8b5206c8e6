#pragma once

#include <stdexcept>
#include <string>

namespace primedensity {

// Argument outside the mathematical domain of an operation (x <= 1 for li, n = 0 for mobius, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Denominator of a rational estimator vanished or changed sign.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

// Request exceeds a configured resource guard (sieve memory budget, counting cap).
class CapacityError : public std::length_error {
public:
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// Caller broke a documented precondition that is not a domain issue (too few samples, bad options).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative numerics gave up (e.g. LM damping ran away).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace primedensity
