#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tightcycle {

/// Malformed input file or text. Carries the 1-based line number when known.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  explicit InputError(const std::string& what) : InputError(0, what) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A caller violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tightcycle
