#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller broke an API contract (mismatched truncation orders, bad sizes).
class usage_error : public error {
public:
    using error::error;
};

/// Argument outside the domain where the object is defined (e.g. |z| >= 1).
class domain_error : public error {
public:
    using error::error;
};

/// Division by a vanishing quantity (zero constant term, f(z) = 0, p = -1).
class singular_error : public error {
public:
    using error::error;
};

/// A series or function does not carry the required normalization.
class normalization_error : public error {
public:
    using error::error;
};

/// A numeric parameter lies outside its admissible region.
class parameter_error : public error {
public:
    using error::error;
};

/// A closed form was asked for its value at a pole on the unit circle.
class boundary_singularity : public error {
public:
    using error::error;
};

/// The argument-principle contour passes too close to the target, or the
/// trapezoid sum is not near an integer.
class contour_error : public error {
public:
    using error::error;
};

/// Broken internal invariant; indicates a bug or an invalid chain.
class internal_error : public error {
public:
    using error::error;
};

} // namespace loewner
