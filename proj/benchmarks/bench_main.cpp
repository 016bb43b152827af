#include <benchmark/benchmark.h>

#include <random>

#include "mgeom/bridges.hpp"
#include "mgeom/geometry.hpp"
#include "mgeom/normalize.hpp"
#include "mgeom/operators.hpp"
#include "mgeom/spectral.hpp"

namespace {

using namespace mgeom;

Matrix cloud(Index n, Index d) {
  std::mt19937_64 engine(42);
  std::normal_distribution<double> normal;
  Matrix r(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) r(i, j) = normal(engine);
  }
  return r;
}

Matrix distances(Index n) {
  return squared_distance(bidivergence(gram(DataCloud(cloud(n, 8)))));
}

void BM_Dmap(benchmark::State& state) {
  const Matrix d2 = distances(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dmap(d2, Beta{0.1}));
}

void BM_Sinkhorn(benchmark::State& state) {
  const Matrix z = -0.1 * distances(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn(z));
}

void BM_Bridge(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix log_k = -0.1 * distances(n);
  const Vector mu_plus = Vector::Constant(n, 1.0 / static_cast<double>(n));
  Vector mu_minus = Vector::LinSpaced(n, 1.0, 2.0);
  mu_minus /= mu_minus.sum();
  for (auto _ : state) benchmark::DoNotOptimize(solve_bridge_log(log_k, mu_plus, mu_minus));
}

void BM_Decompose(benchmark::State& state) {
  const Matrix d2 = distances(state.range(0));
  const BridgeSolution eq = dmap_as_bridge(d2, Beta{0.1});
  const Matrix s = conjugate_symmetrize(eq.forward, eq.mu_plus);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(s, eq.mu_plus));
}

BENCHMARK(BM_Dmap)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_Sinkhorn)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_Bridge)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_Decompose)->RangeMultiplier(2)->Range(32, 256);

}  // namespace

BENCHMARK_MAIN();
