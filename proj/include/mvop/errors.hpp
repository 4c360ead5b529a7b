#pragma once

#include <stdexcept>
#include <string>

namespace mvop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's precondition (wrong shape, non-unit diagonal, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A matrix that had to be positive definite was not (Cholesky pivot <= 0).
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// A difference operator was asked for coefficients beyond its tabulated range.
class TabulationError : public Error {
public:
    using Error::Error;
};

/// Orthogonalization lost positive definiteness or accuracy; the requested
/// degree is outside what double precision supports for this weight.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Quadrature refinement failed to converge.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// A fitted object did not verify (e.g. W^{-1}W' is not a polynomial of the requested degree).
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Malformed or incomplete weight configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace mvop
