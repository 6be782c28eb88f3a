#pragma once

#include <stdexcept>
#include <string>

namespace swg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (JSON syntax, wrong shapes, bad indices).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Mesh construction or validation failure.
class MeshError : public Error {
public:
    using Error::Error;
};

/// Degenerate or ill-conditioned element geometry.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Operation requested on a mesh/cell type it does not support
/// (e.g. a rectangle-only quadrature rule on a general polygon).
class ModeError : public Error {
public:
    using Error::Error;
};

/// Boundary data or right-hand side inconsistent with the
/// incompressibility constraint.
class CompatibilityError : public Error {
public:
    using Error::Error;
};

/// Linear algebra failure (singular matrix, size mismatch).
class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace swg
