#ifndef EQK_ERROR_HPP
#define EQK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace eqk {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A height function is undefined for the given polynomial.
class HeightError : public Error {
 public:
  HeightError(std::string height, const std::string& what)
      : Error(what), height_(std::move(height)) {}
  const std::string& height() const noexcept { return height_; }

 private:
  std::string height_;
};

/// Enumeration would exceed the configured candidate budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace eqk

#endif  // EQK_ERROR_HPP
