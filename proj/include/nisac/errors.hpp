#pragma once

#include <stdexcept>
#include <string>

namespace nisac {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// numerics
class DimensionMismatch : public Error {
  public:
    using Error::Error;
};
class NotHermitian : public Error {
  public:
    using Error::Error;
};
class DomainError : public Error {
  public:
    using Error::Error;
};
class NonFiniteObjective : public Error {
  public:
    using Error::Error;
};
class GridTooLarge : public Error {
  public:
    using Error::Error;
};
class InsufficientTrials : public Error {
  public:
    using Error::Error;
};

// channel
class AngleOutOfRange : public Error {
  public:
    using Error::Error;
};

// downlink
class DesignMismatch : public Error {
  public:
    using Error::Error;
};
class InvalidPermutation : public Error {
  public:
    using Error::Error;
};
class InfeasibleConstraint : public Error {
  public:
    using Error::Error;
};
class SolverFailed : public Error {
  public:
    using Error::Error;
};

// uplink
class SplitDesignMismatch : public Error {
  public:
    using Error::Error;
};

// config / io
class ConfigError : public Error {
  public:
    using Error::Error;
};
class ParseError : public ConfigError {
  public:
    using ConfigError::ConfigError;
};
class ValidationError : public ConfigError {
  public:
    using ConfigError::ConfigError;
};
class UnknownKey : public ConfigError {
  public:
    using ConfigError::ConfigError;
};
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace nisac
