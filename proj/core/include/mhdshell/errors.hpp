#pragma once

#include <stdexcept>
#include <string>

namespace mhdshell {

// Configuration file could not be parsed or violates a model invariant.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Geometry degenerated: projection at the circle center, sigma_w <= 0,
// or a displacement outside the admissible range.
class DegeneracyError : public std::runtime_error {
public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Newton iteration for the inverse flow map failed to converge.
class NoConvergenceError : public std::runtime_error {
public:
  explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Advective or diffusive stability condition violated, or substep budget spent.
class CflError : public std::runtime_error {
public:
  explicit CflError(const std::string& what) : std::runtime_error(what) {}
};

// A field picked up a NaN; signals blow-up of the explicit scheme.
class NanError : public std::runtime_error {
public:
  explicit NanError(const std::string& what) : std::runtime_error(what) {}
};

// Checkpoint file truncated, malformed, or written on an incompatible platform.
class CheckpointError : public std::runtime_error {
public:
  explicit CheckpointError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation outside a function's mathematical domain (e.g. entropy at rho <= 0).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace mhdshell
