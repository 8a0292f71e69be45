#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sectlab/stats.hpp"

using namespace sectlab;

TEST(Stats, MeanOf) {
  const std::vector<double> v = {1, 2, 3, 4};
  const Estimate e = mean_of(v);
  EXPECT_DOUBLE_EQ(e.value, 2.5);
  EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-12);
  EXPECT_EQ(e.n_samples, 4);
}

TEST(Stats, LogMeanExpHandlesHugeValues) {
  const std::vector<double> logs = {1000.0, 1000.0 + std::log(3.0)};
  const Estimate e = log_mean_exp(logs);
  EXPECT_TRUE(e.log_domain);
  EXPECT_NEAR(e.value, 1000.0 + std::log(2.0), 1e-12);
}

TEST(Stats, LogLinearRoundTrip) {
  Estimate e{4.0, 0.2, 100, false, "x"};
  const Estimate l = to_log(e);
  EXPECT_NEAR(l.value, std::log(4.0), 1e-15);
  EXPECT_NEAR(l.std_error, 0.05, 1e-15);
  const Estimate back = to_linear(l);
  EXPECT_NEAR(back.value, 4.0, 1e-12);
  EXPECT_NEAR(back.std_error, 0.2, 1e-12);
}

TEST(Stats, LogAffineAndProduct) {
  const Estimate x = Estimate{std::log(8.0), 0.03, 10, true, "x"};
  const Estimate y = log_affine(x, 1.0 / 3.0, std::log(5.0), "cbrt");
  EXPECT_NEAR(y.value, std::log(10.0), 1e-12);
  EXPECT_NEAR(y.std_error, 0.01, 1e-12);
  const Estimate p = log_product(x, Estimate{0.0, 0.04, 10, true, "y"});
  EXPECT_NEAR(p.std_error, 0.05, 1e-12);
}

TEST(Stats, JackknifeOfMean) {
  std::vector<double> v;
  for (int i = 0; i < 100; ++i) v.push_back(std::sin(i * 1.3));
  double s = 0;
  for (double x : v) s += x;
  const double mean = s / 100;
  const auto jk = group_jackknife(100, mean, [&](int g) { return (s - v[g]) / 99; });
  EXPECT_NEAR(jk.std_error, mean_of(v).std_error, 1e-12);
}
