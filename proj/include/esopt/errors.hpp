#pragma once

#include <stdexcept>
#include <string>

namespace esopt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Rejected input: dimension mismatch, bad parameter, malformed document.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// Non-zero interaction matrix whose determinant is below tolerance.
class DegenerateMatrixError : public InputError {
public:
    explicit DegenerateMatrixError(const std::string& what) : InputError(what) {}
};

/// A stochastic method was asked to price in a limit it cannot represent
/// (sigma or time-to-expiry zero); callers use the deterministic branch.
class DegenerateLimitError : public InputError {
public:
    explicit DegenerateLimitError(const std::string& what) : InputError(what) {}
};

/// The mapped spot is non-positive and cannot back an option. Carries the
/// offending value.
class UnpriceableError : public Error {
public:
    UnpriceableError(const std::string& what, double spot)
        : Error(what), spot_(spot) {}
    double spot() const { return spot_; }

private:
    double spot_;
};

}  // namespace esopt
