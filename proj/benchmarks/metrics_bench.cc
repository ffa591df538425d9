#include <benchmark/benchmark.h>

#include "lanegraph/synth.h"
#include "lanegraph/topo_metrics.h"

namespace {

// Straight parallel lanes with roughly `n` vertices after interpolation.
lanegraph::LaneGraph lanes(std::size_t n, double offset) {
  lanegraph::LaneGraph g;
  const std::size_t per_lane = n / 4;
  for (int lane = 0; lane < 4; ++lane) {
    lanegraph::VertexId prev = -1;
    for (std::size_t i = 0; i < per_lane; ++i) {
      const lanegraph::VertexId id =
          g.add_vertex({lane * 3.5 + offset, static_cast<double>(i) * 0.15});
      if (prev >= 0) g.add_edge(prev, id);
      prev = id;
    }
  }
  return g;
}

void BM_TopoMetric(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const lanegraph::LaneGraph gt = lanes(n, 0.0);
  const lanegraph::LaneGraph pred = lanes(n, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(lanegraph::topo_metric(pred, gt));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TopoMetric)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_JunctionTopo(benchmark::State& state) {
  lanegraph::SynthConfig config;
  config.seed = 7;
  config.max_vertices = 0;
  config.max_depth = 12;
  const lanegraph::LaneGraph gt = lanegraph::generate_graph(config);
  config.seed = 8;
  const lanegraph::LaneGraph pred = lanegraph::generate_graph(config);
  for (auto _ : state) benchmark::DoNotOptimize(lanegraph::junction_topo_metric(pred, gt));
}
BENCHMARK(BM_JunctionTopo)->Unit(benchmark::kMillisecond);

}  // namespace
