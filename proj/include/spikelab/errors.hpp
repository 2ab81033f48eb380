#pragma once

#include <stdexcept>
#include <string>

namespace spikelab {

/// Base class of every failure raised by the library. The CLI maps
/// ConfigError to exit code 2 and every other Error to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No initial interval for the shooting parameter separates blow-up
/// from zero-crossing.
class NoBracket : public Error {
public:
    using Error::Error;
};

/// p >= (N+2)/(N-2) with N >= 3; the ground state does not decay.
class Supercritical : public Error {
public:
    using Error::Error;
};

class OutsideDomain : public Error {
public:
    using Error::Error;
};

class NonpositiveCoefficient : public Error {
public:
    using Error::Error;
};

class UnsupportedShape : public Error {
public:
    using Error::Error;
};

/// A spike narrower than ~3 grid spacings cannot be represented on the
/// grid; callers may override explicitly.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Gram matrix of the tangent fields is numerically singular.
class DegenerateBasis : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

/// Newton iterate lost the spike and fell into the trivial branch.
class CollapseToZero : public Error {
public:
    using Error::Error;
};

class FlatField : public Error {
public:
    using Error::Error;
};

class IterationStall : public Error {
public:
    using Error::Error;
};

class BoundaryEscape : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace spikelab
