#pragma once

#include <stdexcept>
#include <string>

namespace infogeo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Natural parameter outside the declared domain (or a finite-difference
/// stencil leaving it).
class DomainError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Covariance of the statistic (or a metric matrix) is numerically singular.
class RankError : public Error {
 public:
  using Error::Error;
};

/// A signed measure has mass where the reference measure has none.
class AbsoluteContinuityError : public Error {
 public:
  using Error::Error;
};

class SupportBlowupError : public Error {
 public:
  using Error::Error;
};

class UnknownFamilyError : public Error {
 public:
  using Error::Error;
};

class BadParamError : public Error {
 public:
  using Error::Error;
};

/// Tangent vectors combined or paired at different base points.
class BasePointMismatchError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace infogeo
