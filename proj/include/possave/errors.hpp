#pragma once

#include <stdexcept>
#include <string>

namespace possave {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructor argument violates the type's invariants.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of the operation (γ ∉ [0,1], x outside u's domain, infeasible s).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An integrand could not be evaluated on the support of a fuzzy number or distribution.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A derivative required by an approximation was not supplied.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// Prudence requested where u'' vanishes.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// The first-order condition has constant sign on the feasible interval.
class NoInteriorOptimum : public Error {
public:
    enum class Direction { lower, upper };

    NoInteriorOptimum(Direction direction, const std::string& what)
        : Error(what), direction_(direction) {}

    Direction direction() const noexcept { return direction_; }

private:
    Direction direction_;
};

class NonConvergence : public Error {
public:
    NonConvergence(double lo, double hi, const std::string& what)
        : Error(what), lo_(lo), hi_(hi) {}

    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// The three mean returns E_f(A), M(R̃) and R disagree.
class MeanMismatch : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace possave
