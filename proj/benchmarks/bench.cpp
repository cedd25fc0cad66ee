#include <benchmark/benchmark.h>

#include "wim/optimize.hpp"

namespace {

using namespace wim;

void BM_LipschitzVerticesDiscrete(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lipschitz_vertices(discrete_metric(n)));
}
BENCHMARK(BM_LipschitzVerticesDiscrete)->Arg(4)->Arg(5)->Arg(6);

void BM_LipschitzVerticesCube(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<int> sizes(static_cast<std::size_t>(k), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lipschitz_vertices_bipartite(l0_metric(sizes)));
}
BENCHMARK(BM_LipschitzVerticesCube)->Arg(2)->Arg(3)->Arg(4);

void BM_FaceLattice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WassersteinBall ball = build_ball(lipschitz_vertices(discrete_metric(n)));
  for (auto _ : state) benchmark::DoNotOptimize(face_lattice(ball));
}
BENCHMARK(BM_FaceLattice)->Arg(4)->Arg(5)->Arg(6);

void BM_PolarDegrees(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<FactorSpec> factors(static_cast<std::size_t>(k), FactorSpec{2, 1});
  ProductShape shape = ProductShape::make(factors);
  for (auto _ : state) benchmark::DoNotOptimize(polar_degrees(shape));
}
BENCHMARK(BM_PolarDegrees)->Arg(3)->Arg(5)->Arg(7);

void BM_WassersteinValue(benchmark::State& state) {
  LipschitzPolytope poly = lipschitz_vertices(l1_metric({3, 3}));
  std::vector<std::vector<double>> vx;
  for (const auto& v : poly.vertices) vx.push_back(to_doubles(v.coords));
  std::vector<double> diff(9);
  for (int i = 0; i < 9; ++i) diff[static_cast<std::size_t>(i)] = (i % 2 ? 1.0 : -1.0) / 9;
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein_value(vx, diff));
}
BENCHMARK(BM_WassersteinValue);

void BM_ProjectGlobal(benchmark::State& state) {
  Workspace ws = Workspace::make(ModelSpec::make({{2, 1}, {2, 1}}), l0_metric({2, 2}));
  std::vector<double> mu = {0.1, 0.2, 0.3, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(project_global(ws, mu));
}
BENCHMARK(BM_ProjectGlobal);

}  // namespace

BENCHMARK_MAIN();
