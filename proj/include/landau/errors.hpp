#pragma once

#include <stdexcept>
#include <string>

namespace landau {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input configuration (bad field class, bad mesh, missing file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure could not deliver the requested accuracy.
class NumericError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The superlevel set of a weight reaches past the configured radius.
class UnboundedSet : public NumericError {
 public:
  using NumericError::NumericError;
};

/// E_±(λ) vanished where a ratio of counting measures was requested.
class DegenerateWeight : public NumericError {
 public:
  using NumericError::NumericError;
};

class MeshMismatch : public NumericError {
 public:
  using NumericError::NumericError;
};

class BasisTooSmall : public NumericError {
 public:
  using NumericError::NumericError;
};

class InconsistentProvenance : public Error {
 public:
  using Error::Error;
};

/// No λ on the grid satisfies every trust-region constraint.
class TrustRegionEmpty : public Error {
 public:
  using Error::Error;
};

}  // namespace landau
