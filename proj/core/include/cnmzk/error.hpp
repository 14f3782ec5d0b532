#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cnmzk {

using Bytes = std::vector<std::uint8_t>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Group or scalar misuse: wrong group, non-member, division by zero.
class AlgebraError : public Error {
 public:
  using Error::Error;
};

/// Malformed or non-canonical byte input.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// A session violated the message order or a party aborted.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Two transcripts could not be turned into a witness.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

/// The algebra produced a candidate that fails the relation predicate.
class ExtractionMismatch : public ExtractionError {
 public:
  using ExtractionError::ExtractionError;
};

}  // namespace cnmzk
