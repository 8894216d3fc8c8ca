#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rdf_forge {

/// Base of every error raised by the toolchain.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad XML/JSON/STL, schema violations, unresolvable
/// references inside a document. Carries a location string when one exists
/// ("line 12", "components[2].phys.mass", ...).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string location = {})
      : Error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// The input is well-formed but the requested operation cannot be carried
/// out on it (closed loop to URDF, open mesh for mass properties, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ClosedLoopError : public DomainError {
 public:
  ClosedLoopError(const std::string& message, std::vector<std::string> loop_joints)
      : DomainError(message), loop_joints_(std::move(loop_joints)) {}

  const std::vector<std::string>& loop_joints() const noexcept { return loop_joints_; }

 private:
  std::vector<std::string> loop_joints_;
};

class UnsupportedJointError : public DomainError {
 public:
  using DomainError::DomainError;
};

class MeshError : public DomainError {
 public:
  using DomainError::DomainError;
};

class GraphError : public DomainError {
 public:
  GraphError(const std::string& message, std::vector<std::string> subjects = {})
      : DomainError(message), subjects_(std::move(subjects)) {}

  const std::vector<std::string>& subjects() const noexcept { return subjects_; }

 private:
  std::vector<std::string> subjects_;
};

class IoError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Unsupported (format, simulator) pair or similar option misuse.
class ProfileError : public Error {
 public:
  using Error::Error;
};

}  // namespace rdf_forge
