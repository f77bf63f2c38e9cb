#pragma once

#include <stdexcept>
#include <string>

namespace fivesq {

// Base of every error the library raises. Callers that only care about
// "something went wrong" catch this; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// (P + sqrt(D)) / Q with D a perfect square is rational.
class PerfectSquare : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class AuditFailure : public Error {
 public:
  using Error::Error;
};

class InvalidGeometry : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fivesq
