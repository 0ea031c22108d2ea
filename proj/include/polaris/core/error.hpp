#pragma once

#include <stdexcept>
#include <string>

namespace polaris {

/// Root of every exception thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or fixture (bad config keys, exhausted script,
/// script tag mismatch). Maps to CLI exit code 2 when raised before a run starts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numeric or structural argument outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Ledger append whose iteration precedes the last persisted entry.
class LedgerOrderError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace polaris
