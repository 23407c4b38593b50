#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace uavem {

/// Base class of everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input parameters / configuration files.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The requested mission cannot be flown (weak thrust, dead battery, no
/// line of sight, ...). Carries a short machine-readable code plus, when
/// known, the mission phase and time at which the problem occurs.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what,
                             std::string code = "infeasible",
                             std::string phase = {},
                             std::optional<double> time_s = {})
        : Error(what),
          code_(std::move(code)),
          phase_(std::move(phase)),
          time_s_(time_s) {}

    const std::string& code() const noexcept { return code_; }
    const std::string& phase() const noexcept { return phase_; }
    std::optional<double> time_s() const noexcept { return time_s_; }

private:
    std::string code_;
    std::string phase_;
    std::optional<double> time_s_;
};

/// Numerical breakdown: non-finite intermediate, failed bisection, ...
class NumericalError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its mathematical domain
/// (e.g. asking for the direction of a zero-length vector).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace uavem
