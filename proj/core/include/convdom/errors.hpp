#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace convdom {

/// Base class of every recoverable toolkit error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. Carries the byte offset of the failure and
/// the set of tokens that would have been accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset,
              std::vector<std::string> expected)
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Identifier outside the known set {x, abs, exp, ln, sqrt, pi, e, piecewise}.
class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string name, std::size_t offset)
      : Error("unknown identifier '" + name + "' at offset " +
              std::to_string(offset)),
        name_(std::move(name)),
        offset_(offset) {}

  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// Evaluation hit an infinite or undefined intermediate (division by zero,
/// ln of a non-positive value, sqrt of a negative, 0^negative, overflow).
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// A piecewise function was evaluated where no guard covers the input.
class OutOfDomain : public Error {
 public:
  OutOfDomain(double x)
      : Error("no piecewise guard covers x = " + std::to_string(x)), x_(x) {}

  double x() const { return x_; }

 private:
  double x_;
};

/// Name not present in the fixture catalog.
class UnknownFixture : public Error {
 public:
  explicit UnknownFixture(std::string name)
      : Error("unknown fixture '" + name + "'"), name_(std::move(name)) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Lambda outside the interval required by the class condition.
class LambdaOutOfRange : public Error {
 public:
  explicit LambdaOutOfRange(double lambda)
      : Error("lambda = " + std::to_string(lambda) +
              " outside the admissible interval"),
        lambda_(lambda) {}

  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

/// The dominating function failed its own class membership check, so a
/// dominance verdict would be meaningless.
class PrereqFailed : public Error {
 public:
  using Error::Error;
};

/// Quadrature ran out of subdivisions before reaching the tolerance.
class ToleranceNotReached : public Error {
 public:
  ToleranceNotReached(const std::string& message, double value,
                      double error_estimate)
      : Error(message), value_(value), error_estimate_(error_estimate) {}

  double value() const { return value_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

}  // namespace convdom
