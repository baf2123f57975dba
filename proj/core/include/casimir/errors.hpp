#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (negative index, xi <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quadrature or series failed its convergence check.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Missing, malformed or inconsistent configuration. The message names the key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Tabulated input violates a data-quality rule (gaps, ordering, sign).
class DataQualityError : public Error {
 public:
  using Error::Error;
};

/// A perturbative correction was requested outside its validity range.
class ValidityError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the requested geometry.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// JKR load below the pull-off force: the surfaces are not in contact.
class NoContactError : public Error {
 public:
  using Error::Error;
};

/// Bad call-site arguments (empty inputs, inverted ranges, unknown names).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace casimir
