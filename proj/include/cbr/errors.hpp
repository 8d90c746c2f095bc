#pragma once

#include <stdexcept>
#include <string>

namespace cbr {

/// Base for every error raised by the retrieval library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration input (unreadable stopword file, invalid parameters).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad corpus data: duplicate ids, nothing indexable, malformed records.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A named document or case does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Operation not valid in the current state (empty case base, nothing to reuse).
class StateError : public Error {
 public:
  using Error::Error;
};

class IndexFormatError : public Error {
 public:
  enum class Kind { kUnreadable, kCorrupt, kUnsupportedVersion, kChecksumMismatch };

  IndexFormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace cbr
