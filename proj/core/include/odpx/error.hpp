#pragma once

#include <stdexcept>
#include <string>

namespace odpx {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidIriError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied configuration value is out of range or malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A CSV/TSV/JSON input does not follow its documented layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace odpx
