// Serial reference against the OpenMP evaluator on a cold memo table.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "dpgw/gw0.hpp"

using namespace dpgw;

namespace {

struct Case {
  SurfaceModel surface;
  CurveClass beta;
};

const Case& workload(std::int64_t i) {
  static const std::vector<Case> cases{
      {make_surface(SurfaceKind::p2_blowup, 0), CurveClass{30}},
      {make_surface(SurfaceKind::p2_blowup, 5), CurveClass{16, 6, 5, 4, 3, 2}},
      {make_surface(SurfaceKind::p2_blowup, 7), CurveClass{17, 7, 6, 5, 5, 4, 3, 2}},
      {make_surface(SurfaceKind::quadric), CurveClass{14, 13}},
  };
  return cases.at(static_cast<std::size_t>(i));
}

void label(benchmark::State& state, const Case& c) { state.SetLabel(c.surface.id() + " " + format_class(c.surface, c.beta)); }

void BM_serial(benchmark::State& state) {
  const Case& c = workload(state.range(0));
  for (auto _ : state) {
    MemoTable memo(c.surface);
    benchmark::DoNotOptimize(n0(c.surface, c.beta, memo));
  }
  label(state, c);
}

void BM_parallel(benchmark::State& state) {
  const Case& c = workload(state.range(0));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    MemoTable memo(c.surface);
    benchmark::DoNotOptimize(n0_parallel(c.surface, c.beta, memo));
  }
  label(state, c);
}

}  // namespace

BENCHMARK(BM_serial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->ArgsProduct({{0, 1, 2, 3}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
