#pragma once

#include <stdexcept>
#include <string>

namespace ieuler {

/// Invalid user input: bad config keys, impossible grids, rejected exponents.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (non-positive density, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VacuumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Explicit step refused because dt exceeds the stability guard.
class CflViolation : public std::runtime_error {
public:
    CflViolation(const std::string& what, double required_dt)
        : std::runtime_error(what), required_dt_(required_dt) {}
    double required_dt() const noexcept { return required_dt_; }

private:
    double required_dt_;
};

/// Nonlinear correction did not converge.
class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, int iterations, double residual)
        : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

}  // namespace ieuler
