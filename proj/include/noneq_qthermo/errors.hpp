// errors.hpp — Exception hierarchy shared by every module

#pragma once

#include <stdexcept>
#include <string>

namespace nqt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
    const char* kind() const noexcept override { return "domain"; }
};

// Quadrature/solver failed a convergence or consistency tolerance.
struct NumericalError : Error {
    using Error::Error;
    const char* kind() const noexcept override { return "numerical"; }
};

// Fock-space truncation lost more probability mass than allowed.
struct TruncationError : Error {
    using Error::Error;
    const char* kind() const noexcept override { return "truncation"; }
};

// Two routes to the same quantity disagree beyond tolerance.
struct InconsistencyError : Error {
    using Error::Error;
    const char* kind() const noexcept override { return "inconsistency"; }
};

struct ConfigError : Error {
    using Error::Error;
    const char* kind() const noexcept override { return "config"; }
};

} // namespace nqt
