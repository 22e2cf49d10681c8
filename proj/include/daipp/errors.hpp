#pragma once

#include <stdexcept>
#include <string>

namespace daipp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an oracle's domain (wrong dimension, NaN, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid algorithm parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue estimation failed to converge.
class EstimationError : public Error {
 public:
  using Error::Error;
};

/// A prox or gradient oracle produced an unusable result.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// An iteration cap was exhausted. Subclasses carry the partial state.
class NonconvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace daipp
