#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace unialign {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied data that violates an operation's precondition
/// (dimension mismatch, non-path trace model, bad option value).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Firing a transition that is not enabled.
class NotEnabled : public Error {
 public:
  NotEnabled(std::string transition, std::vector<std::string> deficient_places);

  const std::string& transition() const noexcept { return transition_; }
  const std::vector<std::string>& deficient_places() const noexcept { return deficient_; }

 private:
  std::string transition_;
  std::vector<std::string> deficient_;
};

/// Malformed input file (XML syntax, CSV layout). Carries the position
/// reported by the underlying reader; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input whose content is inconsistent (arc to an unknown node,
/// no derivable final marking).
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// Exploration limits that cannot be honoured (e.g. the initial marking
/// already exceeds the token cap).
class InvalidLimits : public Error {
 public:
  using Error::Error;
};

/// A noise specification that cannot be applied.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// The final marking is not present in the reachability graph.
class Infeasible : public Error {
 public:
  Infeasible(const std::string& message, bool truncated)
      : Error(message), truncated_(truncated) {}

  /// True when the graph was cut short by a limit, so the final marking may
  /// still be reachable in the full graph.
  bool truncated() const noexcept { return truncated_; }

 private:
  bool truncated_;
};

/// A postcondition of an internal algorithm did not hold.
class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace unialign
