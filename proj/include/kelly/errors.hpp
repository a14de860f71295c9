#pragma once

#include <stdexcept>
#include <string>

namespace kelly {

/// Argument outside the domain of an operation (bad p, F, counts...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// p < 1/2: the game has no edge and the Kelly strategy does not play it.
class NoEdgeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The requested quantity does not exist for this (degenerate) game.
class DegenerateError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A series or small-F approximation is used outside its validity range.
class ApproximationDomainError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Result not representable (overflow) or an enumeration guard was exceeded.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// A simulation request exceeds the resource guard.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace kelly
