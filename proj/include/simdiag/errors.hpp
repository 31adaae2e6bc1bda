#pragma once

#include <stdexcept>
#include <string>

namespace simdiag {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised as soon as an arithmetic result is NaN or infinite.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Two diagonal slots of a spectrum are closer than the working precision can resolve.
class SpectrumCollision : public Error {
 public:
  using Error::Error;
};

/// A 2x2 spectrum determinant of the two-matrix system is numerically zero.
class DeterminantCollapse : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Arrowhead nodes do not interlace the roots, so a coupling would be imaginary.
class PositiveRadicand : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace simdiag
