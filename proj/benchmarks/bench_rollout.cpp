#include <random>

#include <benchmark/benchmark.h>

#include "gazesweep/ior.hpp"

namespace {

using namespace gazesweep;

SaliencyMap noisy_map(int side) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid g(side, side);
  for (double& v : g.values()) v = u(rng);
  return SaliencyMap(std::move(g));
}

void BM_Rollout(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SaliencyMap map = noisy_map(side);
  RolloutConfig cfg;
  cfg.image_side = side;
  cfg.n_fixations = 10;
  for (auto _ : state) benchmark::DoNotOptimize(rollout(map, cfg));
}
BENCHMARK(BM_Rollout)->Arg(128)->Arg(225)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
