#pragma once

#include <stdexcept>
#include <string>

namespace ontohyp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class InvalidWorldModel : public Error {
 public:
  using Error::Error;
};

/// A name pool ran dry while populating or minting.
class PoolExhausted : public Error {
 public:
  using Error::Error;
};

/// The requested configuration cannot produce an example.
class Infeasible : public Error {
 public:
  using Error::Error;
};

class InvalidCounts : public Error {
 public:
  using Error::Error;
};

class EmptyGroup : public Error {
 public:
  using Error::Error;
};

/// Ground truth has no premise uses; only possible with corrupt input.
class DivisionUndefined : public Error {
 public:
  using Error::Error;
};

class EndpointError : public Error {
 public:
  EndpointError(int status, const std::string& what)
      : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class Timeout : public Error {
 public:
  using Error::Error;
};

class AuthMissing : public Error {
 public:
  using Error::Error;
};

}  // namespace ontohyp
