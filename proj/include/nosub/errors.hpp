#pragma once

#include <stdexcept>
#include <string>

namespace nosub {

// Thrown when an exact computation would exceed its configured budget
// (oracle subset count, float range in generators). The message names the
// offending quantity.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Violation of the online streaming contract (e.g. more arrivals than the
// clusterer was constructed for).
class ProtocolError : public std::logic_error {
 public:
  explicit ProtocolError(const std::string& what) : std::logic_error(what) {}
};

// Invalid experiment or algorithm configuration. Messages carry the field
// path, e.g. "config.algorithm.name: unknown algorithm 'foo'".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nosub
