#pragma once

#include <stdexcept>
#include <string>

namespace fgb {

// Invalid run configuration (bad file, bad values, incompatible options).
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The interaction protocol was violated at runtime (inconsistent feedback,
// a graph outside the learner's contract, an impossible observation).
// The CLI maps this to exit code 3.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fgb
