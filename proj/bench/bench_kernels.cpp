// Serial reference vs OpenMP kernels, plus the multistart solver both ways.

#include <benchmark/benchmark.h>

#include "asgo/kernels.hpp"
#include "asgo/solver.hpp"

namespace {

using namespace asgo;

Matrix gradients(int D, int M) {
  Rng rng(7);
  return gaussian_matrix(D, M, rng);
}

void BM_outer_serial(benchmark::State& state) {
  const Matrix g = gradients(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::outer_product_sum(g));
}

void BM_outer_omp(benchmark::State& state) {
  const Matrix g = gradients(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::outer_product_sum(g));
}

void BM_gram_serial(benchmark::State& state) {
  const Matrix g = gradients(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::gram(g));
}

void BM_gram_omp(benchmark::State& state) {
  const Matrix g = gradients(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::gram(g));
}

void multistart(benchmark::State& state, bool parallel) {
  const EmbeddedObjective obj = make_embedded(find_function("hartmann6"), 100, 1);
  const ReducedProblem rp(obj, obj.effective_basis(), Vector::Zero(100));
  SolverOptions opts;
  opts.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(multistart_minimize(rp, opts, Rng(3)).f_best);
}

void BM_multistart_serial(benchmark::State& state) { multistart(state, false); }
void BM_multistart_omp(benchmark::State& state) { multistart(state, true); }

}  // namespace

BENCHMARK(BM_outer_serial)->Args({100, 10})->Args({500, 20});
BENCHMARK(BM_outer_omp)->Args({100, 10})->Args({500, 20});
BENCHMARK(BM_gram_serial)->Args({1000, 20})->Args({1000, 200});
BENCHMARK(BM_gram_omp)->Args({1000, 20})->Args({1000, 200});
BENCHMARK(BM_multistart_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multistart_omp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
