#pragma once

#include <cstddef>
#include <cstdint>

#include "lanegraph/geometry.h"
#include "lanegraph/graph2path.h"
#include "lanegraph/lane_graph.h"

namespace lanegraph {

// Perception range used as the default generation box.
inline constexpr Box kDefaultPerceptionRange{-15.0, 15.0, -30.0, 30.0};

struct SynthConfig {
  std::uint64_t seed = 0;
  Box bounds = kDefaultPerceptionRange;
  std::size_t num_roots = 2;
  // Number of layer-to-layer transitions along +y.
  std::size_t max_depth = 6;
  double fork_prob = 0.3;
  double merge_prob = 0.3;
  double min_edge_len = 2.0;
  double lane_width = 3.5;
  std::size_t max_lanes = 6;
  // Uniform lateral jitter of every vertex, meters.
  double position_jitter = 0.3;
  // Stop adding layers before exceeding this many vertices (0 = no limit).
  std::size_t max_vertices = 40;

  void check() const;
};

// Grows a layered DAG in the driving (+y) direction: each layer transition
// lets lanes continue, fork into two neighbours, or merge with the lane to
// their right. Same config (including seed) gives a bit-identical graph.
LaneGraph generate_graph(const SynthConfig& config);

struct PerturbConfig {
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  double drop_path_prob = 0.0;
  double truncate_prob = 0.0;
  double spurious_path_prob = 0.0;
  // Upper bound on the arc-length fraction removed by one truncation.
  double max_truncate_fraction = 0.3;
  Box spurious_bounds = kDefaultPerceptionRange;

  void check() const;
};

// Simulated prediction: per-point Gaussian jitter, whole-path drops, endpoint
// truncation and spurious straight paths. Path i draws from stream i of the
// seed, so the result does not depend on evaluation order.
PathSet perturb_paths(const PathSet& paths, const PerturbConfig& config);

}  // namespace lanegraph
