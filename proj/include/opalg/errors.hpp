#pragma once

#include <stdexcept>
#include <string>

namespace opalg {

/// Malformed or out-of-contract input (dimension mismatch, non-finite entries,
/// wrong algebra flags).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured size cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical structure could not be recovered (e.g. block sizes that are not
/// perfect squares after splitting).
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace opalg
