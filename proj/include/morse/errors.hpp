#pragma once

#include <stdexcept>
#include <string>

namespace morse {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a type invariant (non-positive depth, bad grid, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The requested quantum number has no bound state for this potential.
class NoSuchBoundState : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The finite-difference Hamiltonian has fewer negative eigenvalues than requested.
class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class ZeroFunction : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

/// Two-level coefficients do not lie on the unit circle.
class NotNormalized : public Error {
public:
    using Error::Error;
};

/// A rotation was requested on a mode whose transition dipole is too small to drive.
class ZeroDipole : public Error {
public:
    using Error::Error;
};

}  // namespace morse
