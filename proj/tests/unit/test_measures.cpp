#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sectlab/errors.hpp"
#include "sectlab/measures.hpp"
#include "sectlab/spec_io.hpp"

using namespace sectlab;
using std::numbers::pi;

TEST(Measures, GaussianOnBallMatchesChiSquare) {
  const Estimate m = measure_of_body(gaussian(1.0), euclidean_ball(3), 2000, StreamHandle{7, 0});
  EXPECT_NEAR(m.value, 3.130204156281716, 0.01 * 3.130204156281716);
}

TEST(Measures, GaussianOnCentralDisc) {
  const Frame f = Frame::axis_aligned(3, {0, 1});
  const Estimate m = measure_of_section(gaussian(1.0), euclidean_ball(3), f, 2000, StreamHandle{7, 1});
  EXPECT_NEAR(m.value, 2.472240777719227, 0.01 * 2.472240777719227);
}

TEST(Measures, LebesgueReproducesVolume) {
  const Estimate m = measure_of_body(lebesgue(), cube(3), 20000, StreamHandle{7, 2});
  EXPECT_LT(std::abs(m.value - 8.0), 4 * m.std_error + 1e-9);
}

TEST(Measures, RadialExpOnBall) {
  // 4 pi int_0^1 r^2 e^{-r} dr = 4 pi (2 - 5/e)
  const Estimate m = measure_of_body(radial_exp(1.0), euclidean_ball(3), 500, StreamHandle{7, 3});
  EXPECT_NEAR(m.value, 4 * pi * (2 - 5 / std::exp(1.0)), 1e-7);
}

TEST(Measures, SupBoundsAndFlags) {
  EXPECT_TRUE(gaussian(1.0).even());
  EXPECT_TRUE(gaussian(1.0).log_concave());
  EXPECT_DOUBLE_EQ(gaussian(1.0).value_at_origin(), 1.0);
  const SupBound s = gaussian(1.0).sup_on(cube(3));
  EXPECT_GE(s.value, 1.0);
  Vector shift(2);
  shift << 5.0, 0.0;
  const DensityOracle far = translate(gaussian(1.0), shift);
  EXPECT_FALSE(far.even());
  EXPECT_GE(far.sup_on(cube(2)).value, std::exp(-8.0));
}

TEST(Measures, KpBodyOfGaussian) {
  // p = 2: rho^2 = int_0^inf 2 r e^{-r^2/2} dr = 2; p = 1, rate 2: rho = 1/2
  const StarBody k = kp_body(gaussian(1.0), 2.0, 3);
  Vector d = Vector::Unit(3, 1);
  EXPECT_NEAR(k.radial(d), std::sqrt(2.0), 1e-8);
  const StarBody k1 = kp_body(radial_exp(2.0), 1.0, 2);
  EXPECT_NEAR(k1.radial(Vector::Unit(2, 0)), 0.5, 1e-8);
}

TEST(Measures, KpBodyOfLebesgueDiverges) {
  EXPECT_THROW(kp_body(lebesgue(), 1.0, 2).radial(Vector::Unit(2, 0)), Error);
}

TEST(Measures, GaussianMarginalMass) {
  // total mass is preserved: int_{R^2} marginal = int_{R^3} g = (2 pi)^{3/2}
  const Frame f = Frame::axis_aligned(3, {0, 1});
  const DensityOracle m = gaussian_marginal(gaussian(1.0), f);
  EXPECT_NEAR(m.value_at_origin(), std::sqrt(2 * pi), 1e-12);
  EXPECT_THROW(gaussian_marginal(radial_exp(1.0), f), DomainError);
}

TEST(Measures, ScanSharesFramesOnOneHandle) {
  const StreamHandle h{9, 4};
  const SectionScan a = scan_sections(lebesgue(), cube(3), 1, 20, 200, h);
  const SectionScan b = scan_sections(gaussian(1.0), cube(3), 1, 20, 200, h);
  for (std::size_t i = 0; i < a.frames.size(); ++i) EXPECT_EQ(a.frames[i].basis(), b.frames[i].basis());
  const MaxSection m = max_section_measure(lebesgue(), euclidean_ball(3), 1, 10, 100, h);
  EXPECT_NEAR(m.value.value, pi, 1e-9);
}

TEST(Measures, DensitySpecs) {
  EXPECT_NO_THROW(parse_density({{"kind", "gaussian"}, {"sigma", {1.0, 2.0}}}));
  EXPECT_THROW(parse_density({{"kind", "cauchy"}}), SpecError);
  EXPECT_THROW(parse_density(nlohmann::json::array()), SpecError);
}
