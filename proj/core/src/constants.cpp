#include "sectlab/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "sectlab/errors.hpp"

namespace sectlab::constants {

namespace {

void require_codimension(int n, int k, const char* what) {
  if (n < 2 || k < 1 || k > n - 1) {
    throw DomainError(std::string(what) + ": need 1 <= k <= n-1, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
}

// log(j * omega_j)
double log_j_omega(int j) { return std::log(static_cast<double>(j)) + log_ball_volume(j).log_value; }

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be positive");
  }
  return boost::math::lgamma(x);
}

LogScalar log_ball_volume(int n) {
  if (n < 1) {
    throw DomainError("log_ball_volume: n must be >= 1, got " + std::to_string(n));
  }
  const double half = 0.5 * n;
  return LogScalar::from_log(half * std::log(std::numbers::pi) - log_gamma(half + 1.0));
}

LogScalar gamma_nk(int n, int k) {
  require_codimension(n, k, "gamma_nk");
  const double lw_n = log_ball_volume(n).log_value;
  const double lw_s = log_ball_volume(n - k).log_value;
  return LogScalar::from_log(lw_n * static_cast<double>(n - k) / n - lw_s);
}

LogScalar log_bp_constant(int n, int s) {
  if (n < 2 || s < 1 || s > n - 1) {
    throw DomainError("log_bp_constant: need 1 <= s <= n-1, got n=" + std::to_string(n) +
                      " s=" + std::to_string(s));
  }
  double acc = static_cast<double>(n - s) * log_gamma(s + 1.0);
  for (int j = n - s + 1; j <= n; ++j) acc += log_j_omega(j);
  for (int j = 1; j <= s; ++j) acc -= log_j_omega(j);
  return LogScalar::from_log(acc);
}

double lemma34_ratio(int n, int k) {
  require_codimension(n, k, "lemma34_ratio");
  const double lg = gamma_nk(n, k).log_value;
  const double lp = log_bp_constant(n, n - k).log_value;
  const double root = (-n * lg + lp) / (static_cast<double>(k) * (n - k));
  return std::exp(root - 0.5 * std::log(static_cast<double>(n - k)));
}

bool gamma_bounds_hold(int n, int k) {
  const double lg = gamma_nk(n, k).log_value;
  return lg > -0.5 * k && lg < 0.0;
}

}  // namespace sectlab::constants
