#pragma once

#include <stdexcept>
#include <string>

namespace sigmabias {

// Invalid run parameters (bad modulus, cap, flag combination).  The CLI maps
// this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Checkpoint file does not belong to the requested run (or is corrupt).
// The CLI maps this to exit code 3.
class CheckpointError : public std::runtime_error {
 public:
  explicit CheckpointError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sigmabias
