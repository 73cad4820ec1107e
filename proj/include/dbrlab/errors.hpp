#pragma once

#include <stdexcept>
#include <string>

namespace dbrlab {

/// Base of every error raised by the library. Each subclass names one
/// failure mode so that callers (and the CLI report) can tell them apart.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A quadrature integrand produced a non-finite value at a node.
class SingularIntegrandError : public Error {
public:
    using Error::Error;
};

/// A weight was evaluated at one of its singular points.
class SingularPointError : public Error {
public:
    using Error::Error;
};

class DegenerateWeightError : public Error {
public:
    using Error::Error;
};

/// c_00 of a point distribution is neither 0 nor 1.
class NotWeaklyMultiplicativeError : public Error {
public:
    using Error::Error;
};

/// c_00 = 0 while other coefficients are nonzero.
class InconsistentTableError : public Error {
public:
    using Error::Error;
};

/// The moment table of (1-|z|^2) Laplacian(w) is not rank one, so D_w is
/// not a de Branges-Rovnyak space.
class NotDbrWeightError : public Error {
public:
    using Error::Error;
};

class DegenerateNodeSetError : public Error {
public:
    using Error::Error;
};

class SingularBoundaryDataError : public Error {
public:
    using Error::Error;
};

/// A constructed model violates one of its structural invariants.
class ModelInvariantError : public Error {
public:
    using Error::Error;
};

/// Malformed weight specification string; carries the offending token.
class WeightSpecError : public Error {
public:
    WeightSpecError(const std::string& message, std::string token)
        : Error(message + ": '" + token + "'"), token_(std::move(token)) {}

    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

}  // namespace dbrlab
