#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gardner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument to a numerical routine (non-positive spacing, point
/// outside the domain, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A diagnostic was requested that the problem cannot provide, e.g. an error
/// norm without an analytical solution.
class UnsupportedDiagnostic : public Error {
 public:
  using Error::Error;
};

class InitializationError : public Error {
 public:
  using Error::Error;
};

/// Near-zero pivot while factorizing the step matrix.
class NumericalBreakdown : public Error {
 public:
  NumericalBreakdown(std::size_t step, std::size_t row, double pivot)
      : Error("numerical breakdown at step " + std::to_string(step) + ", pivot row " +
              std::to_string(row) + " (pivot " + std::to_string(pivot) + ")"),
        step_(step),
        row_(row),
        pivot_(pivot) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t row() const noexcept { return row_; }
  double pivot() const noexcept { return pivot_; }

 private:
  std::size_t step_;
  std::size_t row_;
  double pivot_;
};

class ParseError : public Error {
 public:
  ParseError(std::string key, std::size_t line, const std::string& what)
      : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, std::size_t line, const std::string& what) {
    std::string msg = "line " + std::to_string(line);
    if (!key.empty()) msg += ", key '" + key + "'";
    return msg + ": " + what;
  }

  std::string key_;
  std::size_t line_;
};

}  // namespace gardner
