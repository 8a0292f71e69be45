#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sectlab/bodies.hpp"
#include "sectlab/errors.hpp"
#include "sectlab/spec_io.hpp"

using namespace sectlab;
using std::numbers::pi;

TEST(Bodies, RadialFunctions) {
  Vector d(3);
  d << 1, 1, 1;
  d.normalize();
  EXPECT_NEAR(cube(3).radial(d), std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(lp_ball(3, 1.0).radial(d), 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(euclidean_ball(3, 2.0).radial(d), 2.0, 1e-12);
  Matrix a = Matrix::Identity(3, 3);
  a(0, 0) = 4.0;
  Vector e0 = Vector::Unit(3, 0);
  EXPECT_NEAR(ellipsoid(a).radial(e0), 2.0, 1e-12);
}

TEST(Bodies, ExactVolumes) {
  EXPECT_NEAR(*cube(3).exact_volume(), 8.0, 1e-12);
  EXPECT_NEAR(*euclidean_ball(3).exact_volume(), 4 * pi / 3, 1e-12);
  EXPECT_NEAR(*lp_ball(3, 1.0).exact_volume(), 8.0 / 6.0, 1e-12);
  EXPECT_NEAR(*scaled(cube(2), 3.0).exact_volume(), 36.0, 1e-12);
}

TEST(Bodies, MonteCarloVolumeMatchesExact) {
  for (const StarBody& b : {cube(3), lp_ball(3, 1.0), lp_ball(4, 3.0)}) {
    const Estimate e = volume(b, 40000, StreamHandle{7, 1});
    const double want = b.exact_volume().value_or(e.value);
    EXPECT_LT(std::abs(e.value - want), 4 * e.std_error + 1e-12) << b.spec().dump();
  }
}

TEST(Bodies, HPolytopeMatchesCube) {
  Matrix normals(4, 2);
  normals << 1, 0, -1, 0, 0, 1, 0, -1;
  Vector offsets = Vector::Ones(4);
  const StarBody p = h_polytope(normals, offsets);
  Vector d(2);
  d << 0.6, 0.8;
  EXPECT_NEAR(p.radial(d), cube(2).radial(d), 1e-12);
  EXPECT_GE(p.outer_radius(), std::sqrt(2.0));
  EXPECT_NEAR(p.outer_radius(), std::sqrt(2.0), 1e-8);
}

TEST(Bodies, OuterRadiusBoundsRadial) {
  const StarBody poly = random_h_polytope(4, 32, 7);
  CounterRng rng(StreamHandle{1, 2});
  for (int i = 0; i < 2000; ++i) {
    Vector d(4);
    for (int j = 0; j < 4; ++j) d[j] = rng.normal();
    d.normalize();
    ASSERT_LE(poly.radial(d), poly.outer_radius() * (1 + 1e-12));
  }
}

TEST(Bodies, SectionOfBall) {
  const Frame f = Frame::axis_aligned(3, {0, 2});
  const StarBody s = section(euclidean_ball(3), f);
  EXPECT_EQ(s.dim(), 2);
  EXPECT_NEAR(*s.exact_volume(), pi, 1e-12);
  const StarBody cs = section(cube(3), f);
  EXPECT_NEAR(volume(cs, 20000, StreamHandle{3, 3}).value, 4.0, 0.1);
}

TEST(Bodies, LinearImageVolume) {
  Matrix t(2, 2);
  t << 2, 1, 0, 1;
  const StarBody b = linear_image(cube(2), t);
  EXPECT_NEAR(*b.exact_volume(), 8.0, 1e-12);
}

TEST(Bodies, TranslateAndRecenter) {
  Vector shift(2);
  shift << 0.3, -0.2;
  const StarBody t = translate(cube(2), shift);
  Vector x(2);
  x << 1.25, 0.0;
  EXPECT_TRUE(t.contains(x));
  Vector far(2);
  far << 1.5, 0.0;
  EXPECT_THROW(recenter(cube(2), far), OriginNotInterior);
}

TEST(Bodies, SpecRoundTrip) {
  const StarBody b = parse_body({{"kind", "lp_ball"}, {"dim", 3}, {"p", "inf"}, {"radius", 2.0}});
  EXPECT_EQ(b.dim(), 3);
  EXPECT_NEAR(*b.exact_volume(), 64.0, 1e-12);
  EXPECT_THROW(parse_body({{"kind", "torus"}, {"dim", 3}}), SpecError);
  EXPECT_THROW(parse_body({{"kind", "cube"}}), SpecError);
  EXPECT_THROW(parse_body({{"kind", "cube"}, {"dim", 3}}, 4), SpecError);
}

TEST(Bodies, RejectsBadInput) {
  EXPECT_THROW(lp_ball(3, 0.5), SpecError);
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  EXPECT_THROW(linear_image(cube(2), singular), DegenerateBody);
}
