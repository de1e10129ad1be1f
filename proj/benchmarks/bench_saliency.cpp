#include <benchmark/benchmark.h>

#include "gazesweep/fixture.hpp"
#include "gazesweep/saliency.hpp"

namespace {

using namespace gazesweep;

void BM_IttiKoch(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const GuiImage img = resize(make_fixture_image(1).image, side, side);
  for (auto _ : state) benchmark::DoNotOptimize(itti_koch_saliency(img));
}
BENCHMARK(BM_IttiKoch)->Arg(128)->Arg(225)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
