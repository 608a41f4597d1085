#pragma once

#include <stdexcept>
#include <string>

namespace dislox {

// Base class for all recoverable dislox failures. Every error carries a
// category used by the C API / CLI to map onto exit codes.
class Error : public std::runtime_error {
public:
  enum class Kind { Config, Solve, Io, Invalid };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

// Malformed input document (bad token, bad line); message carries the line number.
class SyntaxError : public Error {
public:
  explicit SyntaxError(const std::string& what) : Error(Kind::Config, what) {}
};

// Mesh connectivity violations: dangling vertex ids, inverted or
// non-conforming elements, disconnected meshes.
class TopologyError : public Error {
public:
  explicit TopologyError(const std::string& what) : Error(Kind::Invalid, what) {}
};

// Fault/interface geometry violations (fault on the outer boundary,
// open interface curve, non-manifold junction, bad triangle quality).
class GeometryError : public Error {
public:
  explicit GeometryError(const std::string& what) : Error(Kind::Invalid, what) {}
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(Kind::Config, what) {}
};

// Argument outside the domain of an operation (unknown region, point off
// the fault, facet set not on the requested boundary).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(Kind::Invalid, what) {}
};

class SolveError : public Error {
public:
  explicit SolveError(const std::string& what) : Error(Kind::Solve, what) {}
};

class AssemblyError : public Error {
public:
  explicit AssemblyError(const std::string& what) : Error(Kind::Solve, what) {}
};

// A documented data invariant does not hold (e.g. nonzero slip on a fault
// boundary node).
class InvariantError : public Error {
public:
  explicit InvariantError(const std::string& what) : Error(Kind::Invalid, what) {}
};

class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& what) : Error(Kind::Invalid, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(Kind::Io, what) {}
};

} // namespace dislox
