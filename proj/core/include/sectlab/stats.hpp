#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace sectlab {

/// A Monte Carlo (or exact) estimate. When log_domain is set, value holds
/// log of the quantity and std_error is the standard error of that log,
/// which to first order is the relative standard error of the quantity.
/// `rule` records how std_error was obtained ("sample sd/sqrt(n)",
/// "delta: x^a", ...), so reports can state their error provenance.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  bool log_domain = false;
  std::string rule;

  static Estimate exact(double v, std::string rule = "exact");
  static Estimate exact_log(double log_v, std::string rule = "exact");

  /// Standard error relative to |value| (linear domain), or std_error
  /// itself for log-domain estimates.
  double relative_error() const;
};

/// Mean and sample-sd/sqrt(n) error; the sum is pairwise so the result is
/// independent of how the values were produced in parallel.
Estimate mean_of(std::span<const double> values);

/// log of the mean of exp(log_values[i]), using the max-shift trick.
/// The returned estimate is in log domain.
Estimate log_mean_exp(std::span<const double> log_values);

/// Converts between linear and log domains with the delta method.
Estimate to_log(const Estimate& e);
Estimate to_linear(const Estimate& e);

/// a * log(x) + b for a log-domain estimate x: the log of c * x^a with b = log c.
Estimate log_affine(const Estimate& log_x, double a, double b, const std::string& what);

/// log(x * y) for independent log-domain estimates.
Estimate log_product(const Estimate& log_x, const Estimate& log_y);

/// Delete-a-group jackknife: stat_without(g) evaluates the statistic with
/// group g of the data removed.
struct JackknifeResult {
  double full = 0.0;
  double std_error = 0.0;
};
JackknifeResult group_jackknife(int groups, double full_value,
                                const std::function<double(int)>& stat_without);

}  // namespace sectlab
