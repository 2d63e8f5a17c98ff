#include <benchmark/benchmark.h>

#include "merocurve/algebraic.hpp"

namespace {

void BM_TowerArithmetic(benchmark::State& state) {
  for (auto _ : state) {
    auto F = merocurve::Field::make();
    auto k = F->adjoin_root(merocurve::cyclotomic(8));
    benchmark::DoNotOptimize(k.pow(5) + k.inverse());
  }
}
BENCHMARK(BM_TowerArithmetic);

}  // namespace

BENCHMARK_MAIN();
