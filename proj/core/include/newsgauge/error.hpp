#pragma once

#include <stdexcept>
#include <string>

namespace newsgauge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or structurally invalid input (files, records, config).
class DataError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with arguments that violate its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A looked-up entity (article, artifact, node) does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace newsgauge
