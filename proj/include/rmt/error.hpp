#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace rmt {

/// Malformed or inconsistent input data. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}

  InputError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::optional<std::size_t> line() const noexcept { return line_; }

private:
  std::optional<std::size_t> line_;
};

/// Well-formed input that cannot be analyzed (flat signal, too few taps).
/// Maps to CLI exit code 2.
class AnalysisError : public std::runtime_error {
public:
  explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rmt
