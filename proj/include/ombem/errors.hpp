#pragma once

#include <stdexcept>
#include <string>

namespace ombem {

// Requested evaluation sits on (or numerically at) the coincident point of a
// singular kernel; the caller must route through the singular quadrature path.
class SingularKernelError : public std::runtime_error {
 public:
  explicit SingularKernelError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate parametrization, on-axis evaluation, inverted cells, and the like.
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Bad run configuration (mesh sizes, rule orders, mismatched spaces, ...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Linear solve failed or produced an unusable result.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ombem
