#include "sectlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sectlab/errors.hpp"
#include "sectlab/parallel.hpp"

namespace sectlab {

Estimate Estimate::exact(double v, std::string rule) { return Estimate{v, 0.0, 0, false, std::move(rule)}; }

Estimate Estimate::exact_log(double log_v, std::string rule) {
  return Estimate{log_v, 0.0, 0, true, std::move(rule)};
}

double Estimate::relative_error() const {
  if (log_domain) return std_error;
  if (value == 0.0) return std_error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std_error / std::abs(value);
}

Estimate mean_of(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean_of: empty sample");
  const auto n = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  const double var = values.size() > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;
  return Estimate{mean, std::sqrt(var / n), static_cast<std::int64_t>(values.size()), false,
                  "sample sd/sqrt(n)"};
}

Estimate log_mean_exp(std::span<const double> log_values) {
  if (log_values.empty()) throw DomainError("log_mean_exp: empty sample");
  const double shift = *std::max_element(log_values.begin(), log_values.end());
  if (!std::isfinite(shift)) {
    return Estimate{shift, 0.0, static_cast<std::int64_t>(log_values.size()), true,
                    "log-sum-exp (degenerate)"};
  }
  std::vector<double> scaled(log_values.size());
  for (std::size_t i = 0; i < log_values.size(); ++i) scaled[i] = std::exp(log_values[i] - shift);
  const Estimate m = mean_of(scaled);
  return Estimate{shift + std::log(m.value), m.std_error / m.value, m.n_samples, true,
                  "log-sum-exp; sd/sqrt(n) of shifted terms, delta to log"};
}

Estimate to_log(const Estimate& e) {
  if (e.log_domain) return e;
  if (!(e.value > 0.0)) throw DomainError("to_log: estimate must be positive");
  return Estimate{std::log(e.value), e.std_error / e.value, e.n_samples, true,
                  e.rule + "; delta: log"};
}

Estimate to_linear(const Estimate& e) {
  if (!e.log_domain) return e;
  const double v = std::exp(e.value);
  return Estimate{v, v * e.std_error, e.n_samples, false, e.rule + "; delta: exp"};
}

Estimate log_affine(const Estimate& log_x, double a, double b, const std::string& what) {
  const Estimate lx = to_log(log_x);
  return Estimate{a * lx.value + b, std::abs(a) * lx.std_error, lx.n_samples, true,
                  lx.rule + "; delta: " + what};
}

Estimate log_product(const Estimate& log_x, const Estimate& log_y) {
  const Estimate a = to_log(log_x);
  const Estimate b = to_log(log_y);
  return Estimate{a.value + b.value, std::hypot(a.std_error, b.std_error),
                  std::max(a.n_samples, b.n_samples), true,
                  "independent product, errors added in quadrature"};
}

JackknifeResult group_jackknife(int groups, double full_value,
                                const std::function<double(int)>& stat_without) {
  if (groups < 2) throw DomainError("group_jackknife: need at least two groups");
  std::vector<double> leave_out(groups);
  for (int g = 0; g < groups; ++g) leave_out[g] = stat_without(g);
  const double mean = pairwise_sum(leave_out) / groups;
  double ss = 0.0;
  for (double v : leave_out) ss += (v - mean) * (v - mean);
  return JackknifeResult{full_value, std::sqrt((groups - 1.0) / groups * ss)};
}

}  // namespace sectlab
