#include <benchmark/benchmark.h>

#include "sectlab/bodies.hpp"
#include "sectlab/constants.hpp"
#include "sectlab/functionals.hpp"
#include "sectlab/grassmann.hpp"
#include "sectlab/measures.hpp"
#include "sectlab/rng.hpp"
#include "sectlab/sampler.hpp"

using namespace sectlab;

static void BM_Philox(benchmark::State& state) {
  CounterRng rng(StreamHandle{1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_Philox);

static void BM_HaarFrame(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng rng(StreamHandle{1, 3});
  for (auto _ : state) benchmark::DoNotOptimize(sample_haar(n, n - 1, rng));
}
BENCHMARK(BM_HaarFrame)->Arg(3)->Arg(5)->Arg(10);

static void BM_BpConstant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(constants::log_bp_constant(n, n / 2));
}
BENCHMARK(BM_BpConstant)->Arg(10)->Arg(200);

static void BM_PolytopeRadial(benchmark::State& state) {
  const StarBody poly = random_h_polytope(5, 40, 7);
  CounterRng rng(StreamHandle{1, 4});
  const Vector d = random_direction(5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(poly.radial(d));
}
BENCHMARK(BM_PolytopeRadial);

static void BM_UniformInBody(benchmark::State& state) {
  const StarBody body = state.range(0) == 0 ? cube(4) : lp_ball(4, 1.0);
  CounterRng rng(StreamHandle{1, 5});
  for (auto _ : state) benchmark::DoNotOptimize(uniform_in_body(body, rng));
}
BENCHMARK(BM_UniformInBody)->Arg(0)->Arg(1);

static void BM_GaussianMeasureOfBall(benchmark::State& state) {
  const StarBody ball = euclidean_ball(3);
  const DensityOracle g = gaussian(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(measure_of_body(g, ball, 200, StreamHandle{1, 6}));
}
BENCHMARK(BM_GaussianMeasureOfBall)->Unit(benchmark::kMillisecond);

static void BM_SectionScan(benchmark::State& state) {
  const StarBody body = cube(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_sections(lebesgue(), body, 2, 100, 200, StreamHandle{1, 7}));
  }
}
BENCHMARK(BM_SectionScan)->Unit(benchmark::kMillisecond);

static void BM_SylvesterMoment(benchmark::State& state) {
  const PointSource src = PointSource::uniform(cube(3));
  for (auto _ : state) benchmark::DoNotOptimize(log_simplex_moment(src, 2.0, 2000, StreamHandle{1, 8}));
}
BENCHMARK(BM_SylvesterMoment)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
