#pragma once

#include <stdexcept>
#include <string>

namespace genodist {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable sequence input.
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters (word length, Dmax, bandwidth, percentiles, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A word that is not k symbols over {A,C,G,T}.
class EncodingError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Count-store file problems: version, truncation, bad fields, mismatched configuration.
class StoreError : public Error {
 public:
  using Error::Error;
};

// Two distributions that do not share a domain.
class DomainMismatchError : public Error {
 public:
  using Error::Error;
};

// No probability mass left to normalize.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace genodist
