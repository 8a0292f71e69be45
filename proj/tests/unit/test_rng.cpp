#include <array>
#include <cmath>
#include <cstdint>
#include <set>

#include <gtest/gtest.h>

#include "sectlab/parallel.hpp"
#include "sectlab/rng.hpp"

using sectlab::CounterRng;
using sectlab::StreamHandle;

// Known-answer vectors of the reference Philox4x32-10.
TEST(Rng, PhiloxKnownAnswers) {
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(sectlab::philox4x32({0, 0, 0, 0}, {0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(sectlab::philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(sectlab::philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, ReproducibleAndDistinctStreams) {
  CounterRng a(StreamHandle{7, 1}), b(StreamHandle{7, 1}), c(StreamHandle{7, 2});
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

TEST(Rng, ChildrenAreDistinct) {
  const StreamHandle h{3, 0};
  std::set<std::uint64_t> ids;
  for (std::uint64_t i = 0; i < 1000; ++i) ids.insert(h.child(i).stream_id);
  EXPECT_EQ(ids.size(), 1000u);
  EXPECT_EQ(h.child(5), h.child(5));
  EXPECT_NE(h.child(5).child(1), h.child(1).child(5));
}

TEST(Rng, UniformAndNormalMoments) {
  CounterRng rng(StreamHandle{11, 0});
  const int n = 200000;
  double su = 0, su2 = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    su2 += u * u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(su2 / n, 1.0 / 3.0, 0.003);
  EXPECT_NEAR(sn / n, 0.0, 5 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 0.01);
}

TEST(Parallel, ResultsIndependentOfWorkers) {
  const auto draw = [](std::size_t i) {
    CounterRng rng(StreamHandle{5, 0}.child(i));
    double s = 0;
    for (int j = 0; j < 100; ++j) s += rng.uniform();
    return s;
  };
  const int before = sectlab::worker_count();
  sectlab::set_worker_count(1);
  const auto one = sectlab::parallel_map(257, draw);
  sectlab::set_worker_count(4);
  const auto four = sectlab::parallel_map(257, draw);
  sectlab::set_worker_count(before);
  EXPECT_EQ(one, four);
  EXPECT_EQ(sectlab::pairwise_sum(one), sectlab::pairwise_sum(four));
}
