#pragma once

#include <stdexcept>
#include <string>

namespace levymoduli {

// Bad parameter (beta out of range, h negative, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Adaptive quadrature could not reach the requested tolerance.
// Carries the error estimate that was actually achieved.
class QuadratureFailure : public std::runtime_error {
public:
    QuadratureFailure(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Lag h not an integer multiple of the grid spacing.  Interpolation of
// simulated paths or local-time fields is never allowed.
class AlignmentError : public std::invalid_argument {
public:
    explicit AlignmentError(const std::string& what) : std::invalid_argument(what) {}
};

// Covariance factorization failed even after jitter.
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace levymoduli
