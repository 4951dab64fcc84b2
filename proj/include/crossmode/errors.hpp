#pragma once

#include <stdexcept>
#include <string>

namespace crossmode {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two operators (or modes) of different field species were combined.
struct SpeciesMismatchError : Error {
    using Error::Error;
};

/// A monomial of degree > 2 reached the quadratic-only rewrite engine.
struct DegreeError : Error {
    using Error::Error;
};

/// A mode with zero energy (massless, zero wavevector) was requested.
struct DegenerateModeError : Error {
    using Error::Error;
};

/// Duplicate mode ids or an otherwise inconsistent mode registry.
struct RegistryError : Error {
    using Error::Error;
};

/// An expression that must be normal-ordered was not.
struct OrderingError : Error {
    using Error::Error;
};

/// A fermion occupation number above one.
struct PauliViolationError : Error {
    using Error::Error;
};

/// A Fock-space occupation at or beyond the truncation cutoff.
struct TruncationError : Error {
    using Error::Error;
};

/// Input outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// Invalid scenario or CLI configuration; the message names the field.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace crossmode
