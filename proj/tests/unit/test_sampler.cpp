#include <cmath>

#include <gtest/gtest.h>

#include "sectlab/errors.hpp"
#include "sectlab/sampler.hpp"

using namespace sectlab;

namespace {

Matrix draw_points(const StarBody& body, int count, StreamHandle h) {
  CounterRng rng(h);
  Matrix pts(count, body.dim());
  for (int i = 0; i < count; ++i) pts.row(i) = uniform_in_body(body, rng).transpose();
  return pts;
}

}  // namespace

TEST(Sampler, UniformBallSecondMoment) {
  const Matrix pts = draw_points(euclidean_ball(3), 40000, StreamHandle{7, 0});
  const Eigen::ArrayXd r2 = pts.rowwise().squaredNorm().array();
  const double mean = r2.mean();
  const double se = std::sqrt((r2 - mean).square().sum() / (r2.size() - 1) / r2.size());
  EXPECT_NEAR(mean, 0.6, 4 * se);
}

TEST(Sampler, UniformCubeCoordinateVariance) {
  const Matrix pts = draw_points(cube(3), 40000, StreamHandle{7, 1});
  const Covariance c = covariance(pts);
  // sd of a sample variance of U(-1,1) is sqrt(4/45 / N)
  const double se = std::sqrt(4.0 / 45.0 / 40000);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(c.matrix(i, i), 1.0 / 3.0, 4 * se);
  EXPECT_NEAR(c.matrix(0, 1), 0.0, 0.01);
}

TEST(Sampler, UniformPointsAreInside) {
  const StarBody poly = random_h_polytope(3, 24, 3);
  const Matrix pts = draw_points(poly, 2000, StreamHandle{7, 2});
  for (int i = 0; i < pts.rows(); ++i) ASSERT_TRUE(poly.contains(pts.row(i).transpose()));
}

TEST(Sampler, RestrictedGaussianOnBall) {
  // E|x|^2 = int_0^1 r^4 e^{-r^2/2} dr / int_0^1 r^2 e^{-r^2/2} dr
  RestrictedSampler s(gaussian(1.0), euclidean_ball(3));
  CounterRng rng(StreamHandle{7, 3});
  const int n = 40000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double r2 = s.draw(rng).squaredNorm();
    sum += r2;
    sum2 += r2 * r2;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.5650500, 4 * std::sqrt((sum2 / n - mean * mean) / n));
  EXPECT_GT(s.acceptance_rate(), 0.6);
  EXPECT_EQ(s.accepted(), static_cast<std::uint64_t>(n));
}

TEST(Sampler, DegenerateRejectionThrows) {
  RestrictedSampler s(ball_indicator(0.0002), cube(2));
  CounterRng rng(StreamHandle{7, 4});
  EXPECT_THROW(s.draw(rng), DegenerateRejection);
}

TEST(Sampler, SimplexVolume) {
  Matrix m = Matrix::Identity(3, 3);
  EXPECT_NEAR(simplex_volume(m), 1.0 / 6.0, 1e-15);
  m(0, 1) = 5.0;
  EXPECT_NEAR(simplex_volume(m), 1.0 / 6.0, 1e-15);
}

TEST(Sampler, CovarianceNeedsEnoughPoints) {
  EXPECT_THROW(covariance(Matrix::Zero(2, 2)), DomainError);
}
