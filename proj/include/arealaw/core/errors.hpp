#pragma once

#include <stdexcept>
#include <string>

namespace arealaw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown, duplicated or colliding subsystem label.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Shapes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariant of its type (not Hermitian, not PSD, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The dense simulation would exceed the configured Hilbert-space dimension.
class DimensionCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace arealaw
