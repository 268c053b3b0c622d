#pragma once

#include <stdexcept>
#include <string>

namespace socassoc {

/// Malformed input data: unknown node ids, unparsable files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter values outside their documented domain.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A radio link requested between nodes that are out of range of each other.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace socassoc
