#pragma once

#include <stdexcept>
#include <string>

namespace wflow {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (OBJ, config, family spec). Message carries the line number.
class ParseError : public Error {
  public:
    using Error::Error;
    ParseError(const std::string& what, long line) : Error(what + " (line " + std::to_string(line) + ")") {}
};

/// Mesh is outside the supported domain: open boundary, non-manifold edge,
/// inconsistent orientation.
class TopologyError : public Error {
  public:
    using Error::Error;
};

/// Argument outside an operation's domain (alpha <= 0, empty radii grid, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Geometry too degenerate for the curvature operators (near-zero face area,
/// vanishing normal).
class DegenerateMeshError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

/// Bad key, bad value or missing entry in a run configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Backtracking line search could not find an energy-decreasing step.
class StepFailedError : public Error {
  public:
    using Error::Error;
};

} // namespace wflow
