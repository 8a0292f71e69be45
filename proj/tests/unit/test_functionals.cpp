#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sectlab/errors.hpp"
#include "sectlab/functionals.hpp"

using namespace sectlab;
using std::numbers::pi;

namespace {

void expect_within(const Estimate& e, double want, double sigmas = 3.0) {
  const Estimate lin = e.log_domain ? to_linear(e) : e;
  EXPECT_LE(std::abs(lin.value - want), sigmas * lin.std_error + 1e-9 * std::abs(want))
      << lin.value << " +- " << lin.std_error << " vs " << want;
}

}  // namespace

TEST(Functionals, SylvesterDisc) {
  const PointSource disc = PointSource::uniform(euclidean_ball(2));
  expect_within(sylvester(disc, 2, 1.0, 20000, StreamHandle{7, 0}), 4.0 / (9.0 * pi * pi));
  expect_within(sylvester(disc, 2, 2.0, 20000, StreamHandle{7, 0}), 1.0 / (std::sqrt(32.0) * pi));
}

TEST(Functionals, SylvesterIsAffineInvariant) {
  Matrix t(2, 2);
  t << 3, 1, 0, 0.5;
  const Estimate a = sylvester(PointSource::uniform(cube(2)), 2, 2.0, 20000, StreamHandle{7, 1});
  const Estimate b = sylvester(PointSource::uniform(linear_image(cube(2), t)), 2, 2.0, 20000, StreamHandle{7, 2});
  EXPECT_LE(std::abs(a.value - b.value), 3 * std::hypot(a.std_error, b.std_error));
}

TEST(Functionals, BlaschkeCovarianceRelation) {
  const CheckReport r = blaschke_check(PointSource::uniform(cube(2, 0.5)), 20000, StreamHandle{7, 2});
  EXPECT_TRUE(r.pass) << to_json(r).dump();
  EXPECT_NEAR(std::exp(r.rhs.value), 1.0 / 144.0, 4 * r.rhs.std_error / 144.0);
}

TEST(Functionals, IsotropicConstantOfBall) {
  const IsotropicConstant ic = isotropic_constant(PointSource::uniform(euclidean_ball(3)), 20000, StreamHandle{7, 3});
  expect_within(ic.value, std::pow(4 * pi / 3, -1.0 / 3) / std::sqrt(5.0));
}

TEST(Functionals, IsotropizeWhitensCovariance) {
  Matrix t(3, 3);
  t << 2, 0.5, 0, 0, 1, 0.3, 0, 0, 0.5;
  const Isotropized iso = isotropize(linear_image(cube(3), t), 20000, StreamHandle{7, 4});
  EXPECT_LT(iso.off_diagonal_ratio, 0.05);
  EXPECT_NEAR(*iso.body.exact_volume(), 1.0, 1e-9);
}

TEST(Functionals, DualQuermassOfBall) {
  const Estimate phi = dual_affine_quermass(euclidean_ball(3), 1, 100, 200, StreamHandle{7, 5});
  EXPECT_NEAR(phi.value, pi * std::pow(4 * pi / 3, -2.0 / 3), 1e-9);
  EXPECT_NEAR(phi.value, 1.2089939655123522, 1e-9);
}

TEST(Functionals, PolarProductConstants) {
  const Estimate w = w_tilde(euclidean_ball(4), 2, 50, 200, StreamHandle{7, 6});
  const Estimate i = i_minus_k(euclidean_ball(4), 2, 200, StreamHandle{7, 6});
  EXPECT_NEAR(w.value * i.value, 1.0 / std::sqrt(pi), 1e-9);
  const Estimate w3 = w_tilde(euclidean_ball(3), 1, 50, 200, StreamHandle{7, 7});
  const Estimate i3 = i_minus_k(euclidean_ball(3), 1, 200, StreamHandle{7, 7});
  EXPECT_NEAR(w3.value * i3.value, 0.5, 1e-9);
}

TEST(Functionals, VolumeRadius) {
  const Estimate v = volume_radius(cube(3), 20000, StreamHandle{7, 8});
  expect_within(v, std::cbrt(8.0 / (4 * pi / 3)), 4.0);
  EXPECT_NEAR(volume_radius(euclidean_ball(5, 2.0), 100, StreamHandle{7, 8}).value, 2.0, 1e-12);
}

TEST(Functionals, RejectsBadArguments) {
  EXPECT_THROW(dual_affine_quermass(cube(3), 3, 10, 10, StreamHandle{}), DomainError);
  EXPECT_THROW(log_simplex_moment(PointSource::uniform(cube(2)), 1.0, 10, StreamHandle{}), DomainError);
}
