#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfml {

// Caller passed a value outside an operation's domain.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Checked integer arithmetic would have wrapped.
class OverflowError : public std::overflow_error {
  public:
    using std::overflow_error::overflow_error;
};

// Input data is well-formed but unusable (empty window, zero counts, ...).
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based; 0 means "whole file".
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace cfml
