#include <cmath>

#include <gtest/gtest.h>

#include "sectlab/errors.hpp"
#include "sectlab/grassmann.hpp"

using namespace sectlab;

TEST(Grassmann, HaarFramesAreOrthonormal) {
  CounterRng rng(StreamHandle{7, 0});
  for (int i = 0; i < 50; ++i) {
    const Frame f = sample_haar(5, 2, rng);
    EXPECT_LT((f.basis().transpose() * f.basis() - Matrix::Identity(2, 2)).norm(), 1e-12);
  }
}

// E |P_F e_1|^2 = s / n under the Haar measure on G_{n,s}.
TEST(Grassmann, HaarProjectionMoment) {
  CounterRng rng(StreamHandle{7, 1});
  const int n = 5, s = 2, trials = 20000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < trials; ++i) {
    const double v = sample_haar(n, s, rng).basis().row(0).squaredNorm();
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  EXPECT_NEAR(mean, 0.4, 4 * se);
}

TEST(Grassmann, RotationsAreSpecialOrthogonal) {
  CounterRng rng(StreamHandle{7, 2});
  const Matrix q = random_rotation(4, rng);
  EXPECT_LT((q.transpose() * q - Matrix::Identity(4, 4)).norm(), 1e-12);
  EXPECT_NEAR(q.determinant(), 1.0, 1e-12);
}

TEST(Grassmann, EmbedProjectCompose) {
  const Frame f = Frame::axis_aligned(4, {1, 3});
  Vector u(2);
  u << 2, -1;
  const Vector x = f.embed(u);
  EXPECT_DOUBLE_EQ(x[1], 2);
  EXPECT_DOUBLE_EQ(x[3], -1);
  EXPECT_LT((f.project(x) - u).norm(), 1e-15);
  const Frame g = f.compose(Frame::axis_aligned(2, {1}));
  EXPECT_DOUBLE_EQ(g.basis()(3, 0), 1.0);
}

TEST(Grassmann, RejectsNonOrthonormal) {
  Matrix m(3, 2);
  m << 1, 1, 0, 1, 0, 0;
  EXPECT_THROW(Frame{m}, DomainError);
}
