#include "sectlab/sampler.hpp"

#include <cmath>
#include <string>

#include "sectlab/errors.hpp"
#include "sectlab/grassmann.hpp"

namespace sectlab {

Vector uniform_in_body(const StarBody& body, CounterRng& rng) {
  const int n = body.dim();
  const double outer = body.outer_radius();
  while (true) {
    const Vector theta = random_direction(n, rng);
    const double rho = body.radial(theta);
    if (rho > outer) throw DomainError("uniform_in_body: radial value exceeds the outer radius bound");
    // theta must have density proportional to rho^n for x to be uniform
    if (rng.uniform() > std::pow(rho / outer, n)) continue;
    return rho * std::pow(rng.uniform(), 1.0 / n) * theta;
  }
}

RestrictedSampler::RestrictedSampler(DensityOracle density, StarBody body)
    : density_(std::move(density)), body_(std::move(body)) {
  envelope_ = density_.sup_on(body_);
  if (!(envelope_.value > 0.0) || !std::isfinite(envelope_.value)) {
    throw DomainError("sample_restricted: sup of the density on the body must be finite and positive");
  }
  uniform_ = density_.is_lebesgue();
}

Vector RestrictedSampler::draw(CounterRng& rng) const {
  for (std::uint64_t tries = 1;; ++tries) {
    Vector x = uniform_in_body(body_, rng);
    proposals_.fetch_add(1, std::memory_order_relaxed);
    if (uniform_ || rng.uniform() * envelope_.value <= density_.eval(x)) {
      accepted_.fetch_add(1, std::memory_order_relaxed);
      return x;
    }
    if (tries >= kWindow) throw DegenerateRejection(0.0);
  }
}

double RestrictedSampler::acceptance_rate() const {
  const auto p = proposals();
  return p == 0 ? 1.0 : static_cast<double>(accepted()) / static_cast<double>(p);
}

Vector sample_restricted(const DensityOracle& density, const StarBody& body, CounterRng& rng) {
  return RestrictedSampler(density, body).draw(rng);
}

double simplex_volume(const Matrix& points) {
  const Eigen::Index m = points.cols();
  if (m < 1 || points.rows() != m) throw DomainError("simplex_volume: need m points in R^m");
  double v = std::abs(Eigen::FullPivLU<Matrix>(points).determinant());
  for (Eigen::Index i = 2; i <= m; ++i) v /= static_cast<double>(i);
  return v;
}

Covariance covariance(const Matrix& points) {
  const Eigen::Index n = points.rows();
  const Eigen::Index m = points.cols();
  if (n < m + 1) {
    throw DomainError("covariance: need at least " + std::to_string(m + 1) + " points, got " + std::to_string(n));
  }
  Covariance c;
  c.count = n;
  c.mean = points.colwise().mean().transpose();
  const Matrix centered = points.rowwise() - c.mean.transpose();
  c.matrix = centered.transpose() * centered / static_cast<double>(n - 1);
  return c;
}

}  // namespace sectlab
