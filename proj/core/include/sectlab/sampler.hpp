#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "sectlab/bodies.hpp"
#include "sectlab/linalg.hpp"
#include "sectlab/measures.hpp"
#include "sectlab/rng.hpp"

namespace sectlab {

/// Exactly uniform point in a star body: theta drawn with density
/// proportional to rho(theta)^n (uniform proposals accepted with
/// probability (rho / outer_radius)^n), then r = rho(theta) * U^{1/n}.
Vector uniform_in_body(const StarBody& body, CounterRng& rng);

/// Rejection sampler for the probability measure with density
/// proportional to g restricted to the body: propose uniform_in_body,
/// accept with probability g(x) / sup_on(body).
///
/// draw() may be called concurrently; the counters are atomic and their
/// totals do not depend on the interleaving.
class RestrictedSampler {
 public:
  RestrictedSampler(DensityOracle density, StarBody body);
  RestrictedSampler(const RestrictedSampler&) = delete;
  RestrictedSampler& operator=(const RestrictedSampler&) = delete;

  /// Throws DegenerateRejection when kWindow consecutive proposals of one
  /// draw are all rejected, i.e. the windowed rate is below kMinAcceptance.
  Vector draw(CounterRng& rng) const;

  const SupBound& envelope() const { return envelope_; }
  std::uint64_t proposals() const { return proposals_.load(); }
  std::uint64_t accepted() const { return accepted_.load(); }
  double acceptance_rate() const;
  const StarBody& body() const { return body_; }

  static constexpr double kMinAcceptance = 1e-4;
  static constexpr std::uint64_t kWindow = 100000;

 private:
  DensityOracle density_;
  StarBody body_;
  SupBound envelope_;
  bool uniform_;
  mutable std::atomic<std::uint64_t> proposals_{0};
  mutable std::atomic<std::uint64_t> accepted_{0};
};

/// One draw of sample_restricted; use RestrictedSampler directly to keep
/// the acceptance statistics across draws.
Vector sample_restricted(const DensityOracle& density, const StarBody& body, CounterRng& rng);

/// |conv(0, x_1, ..., x_m)| = |det(x_1, ..., x_m)| / m! for the m columns
/// of an m x m matrix.
double simplex_volume(const Matrix& points);

struct Covariance {
  Vector mean;
  Matrix matrix;  // unbiased (divides by N - 1)
  std::int64_t count = 0;
};

/// Sample mean and unbiased covariance of the rows of `points` (N x m).
/// Requires N >= m + 1.
Covariance covariance(const Matrix& points);

}  // namespace sectlab
