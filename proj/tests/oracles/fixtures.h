#pragma once

#include <string>
#include <vector>

#include "lanegraph/lane_graph.h"

namespace lanegraph::testing {

// Builds a graph from positions (ids 0..n-1) and id pairs.
LaneGraph make_graph(const std::vector<Point2>& positions, const std::vector<std::pair<VertexId, VertexId>>& edges);

LaneGraph chain_fixture();           // A -> B -> C along +y
LaneGraph fork_fixture();            // A -> B, B -> C, B -> D
LaneGraph merge_fixture();           // A -> C, B -> C, C -> D
LaneGraph diamond_fixture();         // A -> B -> D, A -> C -> D
LaneGraph double_diamond_fixture();  // two diamonds sharing the middle vertex
LaneGraph tiny_fork_fixture();       // fork that interpolates to 9 vertices
LaneGraph tiny_merge_fixture();      // merge that interpolates to 9 vertices

// Straight chain along +y of `n` vertices spaced `spacing` apart.
LaneGraph straight_chain(std::size_t n, double spacing, Point2 start = {0.0, 0.0});

LaneGraph translated(const LaneGraph& g, Point2 offset);
// Same topology with every vertex jittered by a seeded Gaussian.
LaneGraph jittered(const LaneGraph& g, double sigma, std::uint64_t seed);
// Same graph with ids remapped through id -> 1000 + 7 * id and vertex order reversed.
LaneGraph relabeled(const LaneGraph& g);

struct NamedGraph {
  std::string name;
  LaneGraph graph;
};

std::vector<NamedGraph> base_fixtures();

// Prediction/ground-truth pairs: every base fixture against itself, shifted
// and noisy copies of itself, plus a few mismatched topologies.
struct MetricCase {
  std::string name;
  LaneGraph pred;
  LaneGraph gt;
};

std::vector<MetricCase> metric_cases();

}  // namespace lanegraph::testing
