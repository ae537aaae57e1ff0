#pragma once

#include <stdexcept>
#include <string>

namespace soapgait {

/// Raised for malformed or inconsistent configuration / input files.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the physics breaks down (singular constraint matrix,
/// indefinite metric, shape outside the configured bounds).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace soapgait
