#include <benchmark/benchmark.h>

#include "lanegraph/random.h"
#include "lanegraph/set_matching.h"

namespace {

void BM_Hungarian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lanegraph::CounterRng rng(42);
  lanegraph::CostMatrix cost(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) cost(r, c) = rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(lanegraph::hungarian(cost));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

void BM_BipartiteLoss(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lanegraph::CounterRng rng(3);
  std::vector<std::vector<lanegraph::Point2>> pred(n), gt(n / 2);
  std::vector<double> probs(n);
  for (auto& path : pred) {
    for (int k = 0; k < 30; ++k) path.push_back({rng.uniform(-15, 15), rng.uniform(-30, 30)});
  }
  for (auto& path : gt) {
    for (int k = 0; k < 30; ++k) path.push_back({rng.uniform(-15, 15), rng.uniform(-30, 30)});
  }
  for (double& p : probs) p = rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(lanegraph::bipartite_match_loss(pred, probs, gt));
}
BENCHMARK(BM_BipartiteLoss)->Arg(50)->Arg(100)->Arg(200);

}  // namespace
