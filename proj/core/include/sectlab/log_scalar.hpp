#pragma once

#include <cmath>
#include <compare>
#include <limits>

namespace sectlab {

/// A nonnegative real carried as its natural logarithm. Zero is encoded by
/// a log_value of negative infinity. Constants such as p(n,s) or
/// gamma_{n,k}^{-n} leave double range long before the dimensions of
/// interest do, so every product of them stays in this form.
struct LogScalar {
  double log_value = -std::numeric_limits<double>::infinity();

  static constexpr LogScalar from_log(double lv) { return LogScalar{lv}; }
  static LogScalar from_linear(double x) { return LogScalar{std::log(x)}; }
  static constexpr LogScalar one() { return LogScalar{0.0}; }

  double linear() const { return std::exp(log_value); }
  bool is_zero() const { return std::isinf(log_value) && log_value < 0; }

  LogScalar pow(double exponent) const { return LogScalar{log_value * exponent}; }

  friend LogScalar operator*(LogScalar a, LogScalar b) {
    return LogScalar{a.log_value + b.log_value};
  }
  friend LogScalar operator/(LogScalar a, LogScalar b) {
    return LogScalar{a.log_value - b.log_value};
  }
  LogScalar& operator*=(LogScalar o) {
    log_value += o.log_value;
    return *this;
  }
  LogScalar& operator/=(LogScalar o) {
    log_value -= o.log_value;
    return *this;
  }

  friend auto operator<=>(const LogScalar&, const LogScalar&) = default;
};

}  // namespace sectlab
