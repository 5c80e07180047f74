#pragma once

#include <stdexcept>

namespace spinfp {

/// A linear solve or matrix inversion that fails its accuracy check.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed sweep configuration or spin-state specification.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinfp
