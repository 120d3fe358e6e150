#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace albsim {

/// Base of all simulator errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or binary data.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit parse_error(const std::string& what) : error(what) {}

  /// 1-based line number, or 0 when not applicable.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// A value outside its permitted range (vertex id overflow, edge index past end, ...).
class range_error : public error {
 public:
  using error::error;
};

/// Invalid configuration: bad probabilities, geometry, scheduler names, ...
class config_error : public error {
 public:
  using error::error;
};

/// The engine hit its round limit before the frontier drained.
class convergence_error : public error {
 public:
  using error::error;
};

}  // namespace albsim
