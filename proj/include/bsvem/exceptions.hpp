#pragma once

#include <stdexcept>
#include <string>

namespace bsvem {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A face has fewer than 3 distinct vertices, vanishing area, or is not planar.
struct DegenerateFaceError : Error {
  using Error::Error;
};

/// A cell has non-positive or vanishing volume, or too few faces.
struct DegenerateCellError : Error {
  using Error::Error;
};

/// The faces of a cell do not form a closed surface.
struct OpenCellError : Error {
  using Error::Error;
};

/// The boundary faces of a mesh do not form a closed surface.
struct OpenSurfaceError : Error {
  using Error::Error;
};

/// The background grid contains no cube fully inside the domain.
struct NoInteriorCubeError : Error {
  using Error::Error;
};

/// The projector Gram matrix is numerically singular.
struct SingularProjectorError : Error {
  using Error::Error;
};

/// An iterative solver failed to reach its tolerance.
struct SolverError : Error {
  using Error::Error;
};

/// A file could not be parsed or written in the expected format.
struct FormatError : Error {
  using Error::Error;
};

/// An operation received arguments violating its preconditions.
struct InvalidArgumentError : Error {
  using Error::Error;
};

}  // namespace bsvem
