#pragma once

#include <stdexcept>
#include <string>

namespace kepler {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-finite value, bad size, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The position coincides with the force center, where the field is singular.
class SingularPosition : public Error {
public:
    using Error::Error;
};

/// Zero angular momentum or zero velocity: the tangent/normal construction breaks down.
class DegenerateOrbit : public Error {
public:
    using Error::Error;
};

/// The state has energy H >= 0; the requested quantity exists only for bound orbits.
class NotBound : public Error {
public:
    using Error::Error;
};

/// A trajectory did not cover enough of the orbit for the requested measurement.
class InsufficientCoverage : public Error {
public:
    using Error::Error;
};

/// Circle fitting received (numerically) collinear points.
class CollinearPoints : public Error {
public:
    using Error::Error;
};

/// Two lines that must intersect are parallel.
class ParallelLines : public Error {
public:
    using Error::Error;
};

/// Points that must be distinct coincide.
class DegenerateConfiguration : public Error {
public:
    using Error::Error;
};

} // namespace kepler
