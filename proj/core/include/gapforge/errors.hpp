#pragma once

#include <stdexcept>
#include <string>

namespace gapforge {

// Base class for all library errors so callers can catch everything in one arm.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A gamma-function argument (or one of the factors of a shifted-gamma product)
// landed on a nonpositive integer, where the function has a pole.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Closed-form construction was requested for a period the library only
// handles through the numerical solver.
class UnsupportedPeriod : public Error {
public:
    explicit UnsupportedPeriod(const std::string& msg) : Error(msg) {}
};

// Two states (or a state and an operator) use incompatible analytic forms.
class FormMismatch : public Error {
public:
    explicit FormMismatch(const std::string& msg) : Error(msg) {}
};

// A quadrature scheme was applied to an integrand whose weight it does not match.
class SchemeMismatch : public Error {
public:
    explicit SchemeMismatch(const std::string& msg) : Error(msg) {}
};

// Pointwise evaluation was requested exactly at a singular point of the model.
class SingularPoint : public Error {
public:
    explicit SingularPoint(const std::string& msg) : Error(msg) {}
};

// An iterative numerical kernel (eigenvalue iteration) failed to converge.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// Invalid model parameters (nonpositive gaps, unknown period, malformed input).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace gapforge
