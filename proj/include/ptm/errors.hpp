#pragma once

#include <stdexcept>
#include <string>

namespace ptm {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- linear algebra --------------------------------------------------------
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct DefectivePencil : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };

// -- spectral / metric -----------------------------------------------------
struct ExceptionalPoint : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };

// -- argument validation ---------------------------------------------------
struct DimensionMismatch : Error { using Error::Error; };
struct ZeroOperator : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct DegenerateVariance : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct MissingMetric : Error { using Error::Error; };
struct BadDimension : Error { using Error::Error; };
struct BadBracket : Error { using Error::Error; };
struct IncompleteGrid : Error { using Error::Error; };

// -- i/o ---------------------------------------------------------------------
struct ParseError : Error { using Error::Error; };
struct NotSquare : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace ptm
