#include <benchmark/benchmark.h>

#include "qmoduli/pipeline.hpp"
#include "qmoduli/semi_invariants.hpp"
#include "qmoduli/stability.hpp"
#include "qmoduli/toric.hpp"

using namespace qmoduli;

namespace {

Weight theta(Int p, Int q) { return Weight({Integer(-p), Integer(p - q), Integer(q)}); }

void BM_SemiInvariantBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Quiver q = blowup_quiver(n, 0);
  const Weight w = theta(1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(semi_invariant_basis(q, w, state.range(1)));
  }
}
BENCHMARK(BM_SemiInvariantBasis)->Args({2, 1})->Args({3, 2})->Args({4, 2})->Args({4, 3});

void BM_ClassifyPatterns(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Quiver q = blowup_quiver(n, 0);
  ClassifyOptions options;
  options.jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_patterns(q, theta(1, 2), options));
  }
}
BENCHMARK(BM_ClassifyPatterns)->Args({3, 1})->Args({4, 1})->Args({4, 4})->Unit(benchmark::kMillisecond);

void BM_ModuliFan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Quiver q = blowup_quiver(n, n - 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moduli_fan(q, theta(1, 2)));
  }
}
BENCHMARK(BM_ModuliFan)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Cohomology(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Fan f = blowup_fan(n, 0);
  const auto d = divisor_class(f, state.range(1), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cohomology(f, d));
  }
}
BENCHMARK(BM_Cohomology)->Args({2, 2})->Args({3, 2})->Args({4, 3})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
