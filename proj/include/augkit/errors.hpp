#pragma once

#include <stdexcept>
#include <string>

namespace augkit {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad transform parameters, malformed pipeline configs, invariant violations
// in user-supplied data. Maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Transform name not present in the modality's catalog.
class CatalogError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// File and codec failures. Maps to CLI exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

// A bundled asset is missing or violates its load-time invariants.
class AssetError : public IoError {
 public:
  using IoError::IoError;
};

// Classifier adapter subprocess failed. Maps to CLI exit code 3.
class AdapterError : public Error {
 public:
  using Error::Error;
};

}  // namespace augkit
