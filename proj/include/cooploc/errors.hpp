#pragma once

#include <stdexcept>
#include <string>

namespace cooploc {

/// Bad configuration file, bad CLI usage, or invalid input data.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed structured text (config or trajectory CSV). Carries the
/// offending line number when known.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& origin, long line, const std::string& what)
      : ConfigError(origin + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Numerical failure, e.g. a rank-deficient system (a graph component
/// without anchors upstream).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure while reading inputs or writing reports.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cooploc
