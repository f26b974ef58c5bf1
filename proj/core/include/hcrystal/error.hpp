#pragma once

#include <stdexcept>
#include <string>

namespace hcrystal {

/// Invalid input parameters or configuration. `key` names the offending field when known.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : std::invalid_argument(what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// A normalization sum (partition function or symmetrization factor) is too close to zero.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation would exceed a configured resource bound (memory, factorial size).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The Pauli exclusion principle forbids the requested antisymmetric state.
class ExclusionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hcrystal
