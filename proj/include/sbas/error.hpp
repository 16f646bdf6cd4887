#pragma once

#include <stdexcept>
#include <string>

namespace sbas {

// Base for all library errors. Callers that only need a diagnostic catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (relationship files, prefixes, CSV rows).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Deployment config that loads but violates an address-plan or topology invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Precondition violated by an API caller (unknown AS, empty sets, bad k, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace sbas
