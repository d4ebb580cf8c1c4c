#pragma once

#include <stdexcept>
#include <string>

namespace dp4 {

// Raised for tags outside the supported list.
class FieldNotSupported : public std::invalid_argument {
 public:
  explicit FieldNotSupported(const std::string& tag)
      : std::invalid_argument("field not supported: '" + tag +
                              "' (only class number one, norm-Euclidean fields: "
                              "Q, Q(i), Q(sqrt-2), Q(sqrt-3), Q(sqrt-7), Q(sqrt-11), "
                              "Q(sqrt2), Q(sqrt5))") {}
};

// An interval comparison could not be separated at the maximum precision.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Monte Carlo or quadrature could not reach the requested error bar.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// Fixed-width coordinate arithmetic would overflow.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Requested size is above a module's configured limit.
class LimitExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dp4
