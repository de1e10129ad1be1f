#include <random>

#include <benchmark/benchmark.h>

#include "gazesweep/metrics.hpp"

namespace {

using namespace gazesweep;

Scanpath random_path(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Fixation> f;
  for (int i = 0; i < n; ++i) f.emplace_back(u(rng), u(rng));
  return Scanpath(std::move(f));
}

void BM_Dtw(benchmark::State& state) {
  std::mt19937 rng(1);
  const Scanpath a = random_path(rng, static_cast<int>(state.range(0)));
  const Scanpath b = random_path(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dtw(a, b));
}
BENCHMARK(BM_Dtw)->Arg(10)->Arg(50)->Arg(200);

void BM_Compare(benchmark::State& state) {
  std::mt19937 rng(2);
  const Scanpath a = random_path(rng, static_cast<int>(state.range(0)));
  const Scanpath b = random_path(rng, static_cast<int>(state.range(0)));
  const RecurrenceConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(compare(a, b, cfg));
}
BENCHMARK(BM_Compare)->Arg(10)->Arg(50);

}  // namespace
