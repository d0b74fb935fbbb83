#pragma once

#include <stdexcept>

namespace qham {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad qubit indices, inconsistent pattern lengths,
/// unknown tokens, non-unitary matrices, unnormalized distributions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Requested register width exceeds the configured qubit ceiling.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on a measurement outcome of (near-)zero probability.
class PostSelectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qham
