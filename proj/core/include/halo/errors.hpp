#pragma once

#include <stdexcept>
#include <string>

namespace halo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Standard part requested for an element that is not finite.
class InfiniteElement : public Error {
 public:
  InfiniteElement() : Error("element is infinite; no shadow exists") {}
};

class PoleAtPoint : public Error {
 public:
  explicit PoleAtPoint(const std::string& where)
      : Error("denominator vanishes at " + where) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(const std::string& what = "matrix") : Error(what + " is not Hermitian") {}
};

/// A dense object would exceed the configured size cap.
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what) : Error("resource limit: " + what) {}
};

class NonPositiveMu : public Error {
 public:
  explicit NonPositiveMu(double mu)
      : Error("product minimum is not positive (mu = " + std::to_string(mu) + ")"), mu_(mu) {}
  double mu() const noexcept { return mu_; }

 private:
  double mu_;
};

class DimensionTooSmall : public Error {
 public:
  explicit DimensionTooSmall(const std::string& what) : Error(what) {}
};

class NotPerfectSquare : public Error {
 public:
  explicit NotPerfectSquare(std::size_t s)
      : Error("bond dimension " + std::to_string(s) + " is not a perfect square") {}
};

class NotEBWitnessed : public Error {
 public:
  NotEBWitnessed() : Error("decomposition is not entanglement-breaking witnessed") {}
};

class UnboundedWindow : public Error {
 public:
  explicit UnboundedWindow(const std::string& what) : Error(what) {}
};

/// Malformed input text or file. `line`/`column` are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return "parse error: " + what;
    return "parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
  std::size_t line_;
  std::size_t column_;
};

}  // namespace halo
